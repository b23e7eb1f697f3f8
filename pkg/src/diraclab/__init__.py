"""diraclab: a 1+1D Dirac tunneling laboratory with exact causality checks."""

from .grid import Grid1D, GridError, make_grid
from .state import (PacketSpec, SpinorField, TruncationError, compact_packet,
                    cut, gaussian_packet, inner)
from .dynamics import (BoundaryLeakError, History, Potential, SchemeConfig,
                       evolve, from_characteristics, perturb_potential,
                       rectangular_barrier, step, to_characteristics)
from .observables import (CurrentField, continuity_residual, current,
                          probability, probability_right_of,
                          total_probability_drift, velocity)
from .causality import (CausalityReport, SupportInterval,
                        causal_inequality_check, decomposition_check,
                        lightcone_check, operator_identity_check,
                        signalling_check, support, tunneling_bound_check)
from .oracles import (Covector4, FringeSpec, characteristic_determinant,
                      dispersion_check, fringe_demo, massless_exact)
from .experiments import (BarrierSpec, CheckSpec, ExperimentConfig,
                          ExperimentReport, GridSpec, analytic_gaussian_tail,
                          arrival_time, dumont_config, load_config,
                          parse_config, q_point, report_lines, run_dumont,
                          run_experiment, run_sweep, save_config,
                          serialize_config, write_density_csv, write_report)

__version__ = "0.1.0"
