# TreeTen FuncBuild Package