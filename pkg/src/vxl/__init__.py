"""VXL: a small scripting language plus a multiverse exploration engine.

Mark expressions as variation points with alternatives, place probes, then
run every permutation of alternatives ("universes") and compare the
captured probe values in a grid.
"""

from .errors import (ConfigError, GuardError, MarkerError, ParseError,
                     UnknownIdError, VxlError)
from .grid import (GridModel, build_grid, grid_to_json, grid_to_markdown,
                   render_grid)
from .history import Snapshot, SnapshotStore
from .interp import ExecutionResult, evaluate
from .markers import (CountingIdGenerator, RandomIdGenerator,
                      add_alternative, apply_universe, cleanup, rename,
                      set_active, set_alternative_body, set_disabled,
                      wrap_in_probe, wrap_in_replacement, wrap_in_variation)
from .naming import derive_alternative_name, derive_variation_name
from .parser import parse, parse_expression
from .printer import print_program
from .runner import (RunReport, active_probe_values, report_to_json,
                     run_all_universes, run_universe)
from .universes import (Universe, VariationTree, active_universe,
                        collect_variation_tree, enumerate_universes,
                        universe_label)
from .values import UNIT, format_value, value_equal, value_to_json

__version__ = "0.1.0"
