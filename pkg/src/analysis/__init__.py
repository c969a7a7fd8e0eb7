# TreeTen Analysis Package