# TreeTen TTN Package