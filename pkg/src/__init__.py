# TreeTen Source Package