"""Milnor invariants of links and self C_k-moves.

Links are slice words (Morse events read bottom to top).  From a diagram
the package computes Wirtinger presentations, Magnus expansions of
longitudes and mu-bar invariants, Jones and Conway polynomials, and builds
cables, Bing and Whitehead doubles and tree clasper surgeries.
"""
from .catalog import catalog, catalog_names
from .constructions import (BudgetExceeded, CableSpec, Leaf, TreeClasper, band_sum, bing_double,
                            cable, clasper_surgery, random_self_ck_move, realize_milnor,
                            whitehead_double)
from .diagram import (DiagramError, Event, LinkDiagram, PDCode, component_data, from_word,
                      linking_matrix, mirror, parse_slice_word, reverse, slice_to_pd, sublink)
from .milnor import MagnusData, MilnorIndex, MilnorValue, delta, milnor_table, mu_bar, mu_raw
from .polynomials import LaurentPoly, alexander, conway, derivative_at, jones, kauffman_bracket
from .wirtinger import presentation_from_pd

__version__ = "0.1.0"
