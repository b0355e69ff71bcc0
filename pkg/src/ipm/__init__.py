"""Max-plus (idempotent) probability measures on finite metric spaces.

Library layout:
    maxplus   -- semiring arithmetic and the homotopy log-coefficients
    space     -- finite metric spaces, functions, maps, homotopy witnesses
    measure   -- canonical finite-support measures and their operations
    subspace  -- single-peak membership and the four retractions
    homotopy  -- fibre contraction, deformation, functorial lifts
    topology  -- weak-topology bracket/subbase neighborhoods
    gen       -- seeded scenario generators
    harness   -- theorem-keyed property suites and JSON reports
    cli       -- the `ipm` command
"""

__version__ = "0.1.0"
