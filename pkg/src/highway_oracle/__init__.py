"""Batch-dynamic exact distance oracle built on highway cover labellings."""
from .graph import (Batch, EdgeUpdate, Graph, GraphError, IdMap, Kind, ParseError,
                    apply_batch, load_batch, load_edge_list, neighbors, normalize_batch)
from .labelling import (INF, HighwayLabelling, LandmarkLength, LandmarkSet, build,
                        label_distance, labelling_size, landmark_distance, select_landmarks)
from .persist import deserialize, serialize
from .query import QueryResult, query, upper_bound
from .dynamizer import (AnchorSeed, ExtendedLandmarkLength, anchor_seeds, batch_repair,
                        batch_search_basic, batch_search_improved, batch_update,
                        batch_update_parallel, beta, oplus)

__version__ = "0.1.0"
