# TreeTen CLI Package