# TreeTen Fredholm Package