"""
Projection-formula identities for Ind/Res between Burn(S) and Burn(G), checked exactly.

With A = Burn(S), B = Burn(G), i = Ind, r = Res, R = r i, Q = i(1_A), q = r(Q) and
q F(q) = n 1_A from the division polynomial of q, the suite verifies

* Frobenius reciprocity i(r(y) x) = y i(x) on all basis pairs,
* i(r(y)) = Q y, n i(a) = i(F(q) R(a)) and R(R(a)) = q R(a) on basis elements,
* Ker(i) = Ker(R) as integer lattices,
* Ker(R) + Im(R) and Ker(r) + Im(i) are direct with cokernels killed by n,
* n prime to p when S is a p-group of index prime to p.
"""

import logging
import time
from typing import Any, List

import numpy as np

from gtrace.burnside.induction import InductionPair, induction_pair
from gtrace.burnside.lattice import integer_kernel, invariant_factors, lattice_rank, same_lattice
from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import CheckFailure, SpecError
from gtrace.groups.finite_group import FiniteGroup
from gtrace.groups.subgroups import SubgroupRef, is_p_group
from gtrace.report import CheckReport


def _expect(report: CheckReport, identity: str, ok: bool, witness: Any) -> None:
    report.attempted += 1
    report.nonvacuous += 1
    if not ok:
        raise CheckFailure(identity, witness)
    report.passes += 1


def _direct_sum_killed_by(K, image: List[List[int]], rank_ambient: int, n: int):
    """Rank additivity and cokernel exponent for the sum map K + Im -> Z^rank."""
    K = np.asarray(K, dtype=object)
    im = np.array(image, dtype=object)
    joined = np.hstack([K, im])
    rk_K, rk_im, rk_joined = lattice_rank(K), lattice_rank(im), lattice_rank(joined)
    factors = invariant_factors(joined)
    return {
        "direct": rk_joined == rk_K + rk_im,
        "full_rank": rk_joined == rank_ambient,
        "invariant_factors": factors,
        "killed_by_n": all(n % d == 0 for d in factors),
    }


def _run_identities(pair: InductionPair, report: CheckReport, prime: int) -> None:
    A, B = pair.ring_S, pair.ring_G
    S = pair.subgroup
    index = S.index

    for y in B.basis_elements():
        ry = pair.restrict(y)
        for x in A.basis_elements():
            lhs, rhs = pair.induce(ry * x), y * pair.induce(x)
            _expect(report, "frobenius reciprocity", lhs == rhs,
                    {"y": list(y.coeffs), "x": list(x.coeffs), "lhs": list(lhs.coeffs),
                     "rhs": list(rhs.coeffs)})

    Q = pair.induce(A.one)
    q = pair.restrict(Q)
    dp = A.division_polynomial(q, prime=prime, gset_size=index)
    n = dp.N
    report.extra.update(
        {
            "Q": list(Q.coeffs),
            "q": list(q.coeffs),
            "q_ghost": list(q.marks),
            "F": dp.to_dict()["F"],
            "n": n,
            "index": index,
        }
    )
    if is_p_group(S.order, prime) and index % prime:
        _expect(report, "n prime to p", n % prime != 0, {"n": n, "prime": prime})

    for y in B.basis_elements():
        lhs = pair.induce(pair.restrict(y))
        _expect(report, "i(r(y)) = Q y", lhs == Q * y, {"y": list(y.coeffs)})

    Fq = A.evaluate(dp.F, q)
    _expect(report, "q F(q) = n 1", q * Fq == A.one * n, {"q": list(q.coeffs), "n": n})

    for a in A.basis_elements():
        Ra = pair.R(a)
        _expect(report, "n i(a) = i(F(q) R(a))", pair.induce(a) * n == pair.induce(Fq * Ra),
                {"a": list(a.coeffs)})
        _expect(report, "R(R(a)) = q R(a)", pair.R(Ra) == q * Ra, {"a": list(a.coeffs)})

    K_i = integer_kernel(pair.i_matrix)
    K_R = integer_kernel(pair.R_map)
    report.extra["kernel_rank"] = int(K_i.shape[1])
    _expect(report, "Ker(i) = Ker(R)", same_lattice(K_i, K_R),
            {"ker_i": K_i.tolist(), "ker_R": K_R.tolist()})

    first = _direct_sum_killed_by(K_R, pair.R_map, A.h, n)
    _expect(report, "Ker(R) + Im(R) killed by n",
            first["direct"] and first["full_rank"] and first["killed_by_n"], first)
    K_r = integer_kernel(pair.r_matrix)
    second = _direct_sum_killed_by(K_r, pair.i_matrix, B.h, n)
    _expect(report, "Ker(r) + Im(i) killed by n",
            second["direct"] and second["full_rank"] and second["killed_by_n"], second)
    report.extra["cokernel_factors"] = [first["invariant_factors"], second["invariant_factors"]]


def projection_suite(
    G: FiniteGroup, S: SubgroupRef, prime: int = 2, budgets: Budgets = DEFAULT_BUDGETS
) -> CheckReport:
    """
    Run the projection-formula identities for S <= G.

    The first failing identity stops the run and is recorded with its witness.

    :param G: Group.
    :param S: Subgroup of G, typically a Sylow 2-subgroup.
    :param prime: Prime used for the p-group assertions.
    :param budgets: Size limits.
    :return: CheckReport with Q, q, F, n and lattice data in ``extra``.
    """
    if S.parent != G:
        raise SpecError("S must be a subgroup of G")
    logging.info(
        f"Running projection suite for {G.name or 'group'} and a subgroup of order {S.order}"
    )
    report = CheckReport(
        check_id="projection",
        params={"group": G.name, "subgroup_order": S.order, "prime": prime},
    )
    start = time.perf_counter()
    try:
        _run_identities(induction_pair(S, budgets), report, prime)
    except CheckFailure as err:
        logging.error(f"Projection identity failed: {err.identity}")
        report.record(err)
    report.runtime_ms = int((time.perf_counter() - start) * 1000)
    return report
