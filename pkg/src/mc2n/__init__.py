"""Multi-hop cognitive cellular network simulator.

Library for spectrum-aware route-discovery analysis on a hexagonal
tessellation and for the iterative spectrum-auction schemes built on top of
it (i-JBiT, static groups, dynamic groups, and a learning-automata bidder
baseline), plus an experiment harness with CSV output.
"""

__version__ = "0.1.0"
