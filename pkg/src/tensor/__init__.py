# TreeTen Tensor Package