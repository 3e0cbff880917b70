"""The composite solvers: online reduction, kernel-first, and plain search.

Every pipeline copies the input graph, runs its stages on the copy, and
returns original vertex ids forming an independent set of the input.
"""

from __future__ import annotations

import random
import time

from .cut import cut_relative, cut_snapshot_top
from .graph import Graph
from .local_search import Budget, PerturbationParams, greedy_initial, run_iterated
from .metrics import ConvergenceLog
from .reductions import KERMIS_RULES, kernelize, lift_solution


def online_mis(g: Graph, cut_fraction: float, budget: Budget, rng: random.Random,
               log: ConvergenceLog | None = None,
               params: PerturbationParams | None = None) -> set[int]:
    """Cut the top snapshot-degree slice, then search with online commits.

    A single greedy pass builds the initial solution, permanently
    committing every tested vertex that passes the degree-<=2 clique
    check; the same check keeps running on every insertion during
    search, so the graph keeps shrinking as the search walks it. The
    pass does not chase a reduction fixpoint.
    """
    start = time.perf_counter()
    if log is None:
        log = ConvergenceLog()
    work = g.copy()
    cut_snapshot_top(work, cut_fraction, rng)
    sol = greedy_initial(work, rng, online=True)
    return run_iterated(work, sol, budget, log, rng, params, start_time=start)


def ker_mis(g: Graph, cut_fraction: float, budget: Budget, rng: random.Random,
            log: ConvergenceLog | None = None,
            params: PerturbationParams | None = None) -> set[int]:
    """Kernelize with the advanced rule set, cut, search, lift.

    The degree-restricted clique rule stays out of the rule set here;
    relative cutting then removes the requested fraction of the kernel
    before search. Logged sizes already include the lifted share, so the
    log tracks input-graph solution sizes. An empty kernel skips search
    entirely and the lifted solution is exact.
    """
    start = time.perf_counter()
    if log is None:
        log = ConvergenceLog()
    work = g.copy()
    result = kernelize(work, rules=KERMIS_RULES)
    cut_relative(work, cut_fraction, rng)
    lifted_bonus = result.stack.offset
    if work.alive_count() == 0:
        lifted = lift_solution(result.stack, set())
        elapsed = 0.0 if budget.deterministic else time.perf_counter() - start
        log.append(elapsed, len(lifted))
        return lifted
    sol = greedy_initial(work, rng)
    best = run_iterated(work, sol, budget, log, rng, params,
                        size_offset=lifted_bonus, start_time=start)
    return lift_solution(result.stack, best)


def plain_arw(g: Graph, budget: Budget, rng: random.Random,
              log: ConvergenceLog | None = None,
              params: PerturbationParams | None = None) -> set[int]:
    """Baseline: greedy start plus iterated local search, untouched graph."""
    start = time.perf_counter()
    if log is None:
        log = ConvergenceLog()
    work = g.copy()
    sol = greedy_initial(work, rng)
    return run_iterated(work, sol, budget, log, rng, params, start_time=start)
