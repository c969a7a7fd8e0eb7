# TreeTen Topology Package