# TreeTen TreeCI Package