from vnlab.io.edgelist import read_edgelist, read_features, write_edgelist, write_features

__all__ = ["read_edgelist", "read_features", "write_edgelist", "write_features"]
