# TreeTen Utils Package