"""Dynamic fixed-parameter algorithms: kernels, branching trees and oracles."""
from .graphcore import DynGraph, new_graph
from .linkcut import LinkCutForest
from .dynconn import ConnectivityForest
from .vckernel import CvcKernel, EdsKernel, VcKernel
from .branchtree import BranchTree
from .hskernel import GoodSetIndex
from .fvs import DynamicFvs
from .mlst import DynamicMlst
from .colorcoded import ColoringFamily, DenseSubgraph, KPath
from .promisekernels import UNKNOWN, EdgeCliqueCover, PointLineCover
from .errors import DynFptError

__all__ = ["DynGraph", "new_graph", "LinkCutForest", "ConnectivityForest", "VcKernel", "CvcKernel",
           "EdsKernel", "BranchTree", "GoodSetIndex", "DynamicFvs", "DynamicMlst", "ColoringFamily",
           "KPath", "DenseSubgraph", "EdgeCliqueCover", "PointLineCover", "UNKNOWN", "DynFptError"]
__version__ = "0.1.0"
