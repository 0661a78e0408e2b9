"""Sum-product growth in arbitrary finite fields F_{p^k}: exact set algebra,
energies, lemma checkers and a seeded measurement harness."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .field import FieldSpec, FieldTable, build_field
from .sets import (CaseLabel, FSet, classify_case, classify_case_xy, difference_set, dilate,
                   distance_composite, inverse_set, iterated_sumset, negate, normalize,
                   product_set, ratio_set, square_set, sumset, translate)
from .subfields import (Subfield, element_degree, generated_subfield,
                        generated_subfield_closure, subfield_lattice)
from .conditions import check_hypothesis_thm1, check_hypothesis_thm2
from .energy import (additive_energy, cs_growth_check, energy_sum_over_ratios,
                     mixed_energy)
from .lemmas import (exact_cover, greedy_cover, katz_shen_search, lemma32_cover_profile,
                     plunnecke_check)
from .harness import GrowthRecord, extremal_search, generate, measure, sweep
