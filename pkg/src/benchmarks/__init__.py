# TreeTen Benchmarks Package