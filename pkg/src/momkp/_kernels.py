"""Hot inner loops: greedy fill, repair, multiobjective branch and bound, MEMOTS-lite.

Every kernel here is written as plain Python over numpy arrays so the same
source runs either compiled by numba or interpreted. Set the environment
variable ``MOMKP_DISABLE_NUMBA=1`` before import to force the interpreted
path; the compiled dispatchers also expose the original function as
``kernel.py_func``.
"""

import os

import numpy as np

DISABLE_ENV = "MOMKP_DISABLE_NUMBA"


def _numba_requested():
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by environment")
    import numba

    USING_NUMBA = True

    def jit(fn):
        return numba.njit(cache=True)(fn)

except ImportError:
    USING_NUMBA = False

    def jit(fn):
        fn.py_func = fn
        return fn


@jit
def lambda_profits(c, lam):
    n, p = c.shape
    out = np.zeros(n)
    for i in range(n):
        s = 0.0
        for k in range(p):
            s += lam[k] * c[i, k]
        out[i] = s
    return out


@jit
def greedy_fill(c, w, flags, residual, lam):
    """Add items by maximal R1 until nothing fits. Mutates flags and residual."""
    n, m = w.shape
    lp = lambda_profits(c, lam)
    while True:
        best = -1
        best_ratio = -1.0
        for i in range(n):
            if flags[i]:
                continue
            fits = True
            denom = 0.0
            for j in range(m):
                if w[i, j] > residual[j]:
                    fits = False
                    break
                denom += w[i, j] / (residual[j] + 1.0)
            if not fits:
                continue
            ratio = np.inf if denom == 0.0 else lp[i] / denom
            if ratio > best_ratio:
                best_ratio = ratio
                best = i
        if best < 0:
            return
        flags[best] = 1
        for j in range(m):
            residual[j] -= w[best, j]


@jit
def repair(c, w, flags, residual, lam):
    """Drop the packed item of smallest R2 until feasible. Returns removal count."""
    n, m = w.shape
    lp = lambda_profits(c, lam)
    removed = 0
    while True:
        feasible = True
        for j in range(m):
            if residual[j] < 0:
                feasible = False
                break
        if feasible:
            return removed
        worst = -1
        worst_ratio = np.inf
        for i in range(n):
            if not flags[i]:
                continue
            tw = 0
            for j in range(m):
                tw += w[i, j]
            if tw == 0:
                continue
            ratio = lp[i] / tw
            if worst < 0 or ratio < worst_ratio:
                worst_ratio = ratio
                worst = i
        if worst < 0:
            return removed
        flags[worst] = 0
        for j in range(m):
            residual[j] += w[worst, j]
        removed += 1


@jit
def covered(a_obj, size, z):
    """True when some archived vector weakly dominates z (archive sorted by objective 0, descending)."""
    p = z.shape[0]
    # only the prefix with objective 0 >= z[0] can weakly dominate z
    lo = 0
    hi = size
    while lo < hi:
        mid = (lo + hi) // 2
        if a_obj[mid, 0] >= z[0]:
            lo = mid + 1
        else:
            hi = mid
    if p == 2:
        # along a biobjective front objective 1 increases down the list
        return lo > 0 and a_obj[lo - 1, 1] >= z[1]
    for a in range(lo):
        weak = True
        for k in range(1, p):
            if a_obj[a, k] < z[k]:
                weak = False
                break
        if weak:
            return True
    return False


@jit
def archive_add(a_obj, a_flag, size, z, fl):
    """Insert (z, fl) into a packed archive unless weakly dominated.

    Members are kept sorted by objective 0, descending. Returns
    (a_obj, a_flag, size, added); buffers are reallocated on growth.
    """
    p = z.shape[0]
    if covered(a_obj, size, z):
        return a_obj, a_flag, size, False
    keep = 0
    for a in range(size):
        dominated = True
        for k in range(p):
            if z[k] < a_obj[a, k]:
                dominated = False
                break
        if not dominated:
            if keep != a:
                a_obj[keep, :] = a_obj[a, :]
                a_flag[keep, :] = a_flag[a, :]
            keep += 1
    size = keep
    if size == a_obj.shape[0]:
        cap = 2 * size + 8
        grown_obj = np.zeros((cap, p), dtype=a_obj.dtype)
        grown_flag = np.zeros((cap, a_flag.shape[1]), dtype=a_flag.dtype)
        grown_obj[:size] = a_obj[:size]
        grown_flag[:size] = a_flag[:size]
        a_obj = grown_obj
        a_flag = grown_flag
    pos = size
    while pos > 0 and a_obj[pos - 1, 0] < z[0]:
        a_obj[pos, :] = a_obj[pos - 1, :]
        a_flag[pos, :] = a_flag[pos - 1, :]
        pos -= 1
    a_obj[pos, :] = z
    a_flag[pos, :] = fl
    return a_obj, a_flag, size + 1, True


@jit
def dantzig(profits, weights, order, capacity):
    """LP-relaxation value of a single-constraint knapsack, floored.

    ``order`` lists item indices by non-increasing profit/weight efficiency
    (zero-weight items first). Negative entries in order are skipped.
    """
    cap = capacity
    val = 0
    for t in range(order.shape[0]):
        i = order[t]
        if i < 0:
            continue
        if weights[i] <= cap:
            cap -= weights[i]
            val += profits[i]
        else:
            val += (profits[i] * cap) // weights[i]
            break
    return val


@jit
def suffix_knapsack_tables(bp, w, widths):
    """Exact single-constraint suffix optima for every bound profit column.

    table[q, j, d, r] = best column-q value of items d.. under weight-j limit r.
    widths[j] caps the tabulated capacity per constraint.
    """
    n, m = w.shape
    nq = bp.shape[1]
    wmax = 0
    for j in range(m):
        wmax = max(wmax, widths[j])
    table = np.zeros((nq, m, n + 1, wmax + 1), dtype=np.int64)
    for q in range(nq):
        for j in range(m):
            for d in range(n - 1, -1, -1):
                wd = w[d, j]
                for r in range(widths[j] + 1):
                    best = table[q, j, d + 1, r]
                    if wd <= r:
                        alt = table[q, j, d + 1, r - wd] + bp[d, q]
                        if alt > best:
                            best = alt
                    table[q, j, d, r] = best
    return table


@jit
def _bound_values(bp, w, depth, res, eff_order, table, widths, out):
    """Upper bounds on every bound-profit column for completions of a node.

    Each column takes the minimum over constraints of a single-constraint
    relaxation: the suffix table when available, else floored Dantzig over
    items that still fit alone. Returns False when no remaining item fits.
    """
    n, m = w.shape
    nq = bp.shape[1]
    any_fit = False
    for i in range(depth, n):
        ok = True
        for j in range(m):
            if w[i, j] > res[j]:
                ok = False
                break
        if ok:
            any_fit = True
            break
    if not any_fit:
        for q in range(nq):
            out[q] = 0
        return False
    if table.shape[0] > 0:
        for q in range(nq):
            best = -1
            for j in range(m):
                v = table[q, j, depth, min(res[j], widths[j])]
                if best < 0 or v < best:
                    best = v
            out[q] = best
        return True
    for q in range(nq):
        best = -1
        for j in range(m):
            cap = res[j]
            val = 0
            for t in range(n):
                i = eff_order[q, j, t]
                if i < depth:
                    continue
                ok = True
                for jj in range(m):
                    if w[i, jj] > res[jj]:
                        ok = False
                        break
                if not ok:
                    continue
                if w[i, j] <= cap:
                    cap -= w[i, j]
                    val += bp[i, q]
                else:
                    val += (bp[i, q] * cap) // w[i, j]
                    break
            if best < 0 or val < best:
                best = val
        out[q] = best
    return True


@jit
def _staircase_covered(a_obj, size, low, ideal, cuts, cut_ub):
    """True when every biobjective point in the box [low, ideal] that also
    satisfies all cuts is weakly dominated by the archive.

    Archive members must be sorted by objective 0 descending; the points not
    weakly dominated form a union of boxes anchored at the staircase corners.
    """
    if size == 0:
        return False
    nc = cuts.shape[0]
    for i in range(size + 1):
        u0 = a_obj[i, 0] + 1 if i < size else 0
        u1 = a_obj[i - 1, 1] + 1 if i > 0 else 0
        u0 = max(u0, low[0])
        u1 = max(u1, low[1])
        if u0 > ideal[0]:
            continue
        if u1 > ideal[1]:
            return True
        cut_off = False
        for t in range(nc):
            if cuts[t, 0] * u0 + cuts[t, 1] * u1 > cut_ub[t]:
                cut_off = True
                break
        if not cut_off:
            return False
    return True


@jit
def branch_and_bound(c, w, caps, cuts, eff_order, node_limit, use_fathom, table, widths):
    """Depth-first multiobjective B&B with ideal-point fathoming.

    Items are branched in the given row order, include-branch first. A node
    is fathomed when its ideal point (objectives so far plus per-objective
    bounds) is weakly dominated by an archived point. For two objectives,
    the rows of ``cuts`` give integer weight vectors whose weighted-sum
    bounds additionally fathom nodes lying under the archive's staircase.
    ``eff_order``/``table`` index bound columns: p objectives, then cuts.
    Returns (front_flags, front_objs, nodes, complete).
    """
    n, m = w.shape
    p = c.shape[1]
    nc = cuts.shape[0]
    nq = p + nc
    bp = np.zeros((n, nq), dtype=np.int64)
    for i in range(n):
        for k in range(p):
            bp[i, k] = c[i, k]
        for t in range(nc):
            s = 0
            for k in range(p):
                s += cuts[t, k] * c[i, k]
            bp[i, p + t] = s

    a_obj = np.zeros((16, p), dtype=np.int64)
    a_flag = np.zeros((16, n), dtype=np.uint8)
    size = 0

    cap = 2 * n + 4
    st_depth = np.zeros(cap, dtype=np.int64)
    st_dec = np.zeros(cap, dtype=np.uint8)
    st_obj = np.zeros((cap, p), dtype=np.int64)
    st_res = np.zeros((cap, m), dtype=np.int64)
    st_res[0, :] = caps
    top = 1

    cur = np.zeros(n, dtype=np.uint8)
    rec = np.zeros(n, dtype=np.uint8)
    bounds = np.zeros(nq, dtype=np.int64)
    ideal = np.zeros(p, dtype=np.int64)
    cut_ub = np.zeros(nc, dtype=np.int64)
    nodes = 0
    while top > 0:
        top -= 1
        d = st_depth[top]
        obj = st_obj[top].copy()
        res = st_res[top].copy()
        if d > 0:
            cur[d - 1] = st_dec[top]
        nodes += 1
        if node_limit > 0 and nodes > node_limit:
            return a_flag[:size].copy(), a_obj[:size].copy(), nodes, False
        terminal = d == n
        if not terminal:
            terminal = not _bound_values(bp, w, d, res, eff_order, table, widths, bounds)
        if terminal:
            for i in range(n):
                rec[i] = cur[i] if i < d else 0
            a_obj, a_flag, size, _ = archive_add(a_obj, a_flag, size, obj, rec)
            continue
        if use_fathom:
            for k in range(p):
                ideal[k] = obj[k] + bounds[k]
            fathomed = False
            for a in range(size):
                weak = True
                for k in range(p):
                    if a_obj[a, k] < ideal[k]:
                        weak = False
                        break
                if weak:
                    fathomed = True
                    break
            if not fathomed and nc > 0 and p == 2:
                for t in range(nc):
                    cut_ub[t] = bounds[p + t] + cuts[t, 0] * obj[0] + cuts[t, 1] * obj[1]
                fathomed = _staircase_covered(a_obj, size, obj, ideal, cuts, cut_ub)
            if fathomed:
                continue
        st_depth[top] = d + 1
        st_dec[top] = 0
        st_obj[top, :] = obj
        st_res[top, :] = res
        top += 1
        fits = True
        for j in range(m):
            if w[d, j] > res[j]:
                fits = False
                break
        if fits:
            st_depth[top] = d + 1
            st_dec[top] = 1
            for k in range(p):
                st_obj[top, k] = obj[k] + c[d, k]
            for j in range(m):
                st_res[top, j] = res[j] - w[d, j]
            top += 1
    return a_flag[:size].copy(), a_obj[:size].copy(), nodes, True


@jit
def _local_search(c, w, flags, obj, res, lam, a_obj, a_flag, size, tabu_steps, tenure):
    """Weighted-sum steepest ascent, then a short tabu walk, over single-flip and swap moves.

    The ascent applies the best improving move until none is left. The tabu
    walk then applies the best move whose items were not moved in the last
    ``tenure`` steps, improving or not, for ``tabu_steps`` steps. Every
    feasible neighbor evaluated is offered to the archive.
    Returns (a_obj, a_flag, size).
    """
    n, m = w.shape
    p = c.shape[1]
    lp = lambda_profits(c, lam)
    cand_obj = np.zeros(p, dtype=np.int64)
    cand = flags.copy()
    tabu_until = np.zeros(n, dtype=np.int64)
    step = 0
    walked = 0
    ascending = True
    while True:
        best_gain = 0.0
        best_out = -1
        best_in = -1
        nt_gain = -np.inf
        nt_out = -1
        nt_in = -1
        for i_out in range(n):
            if flags[i_out]:
                for k in range(p):
                    cand_obj[k] = obj[k] - c[i_out, k]
                cand[i_out] = 0
                if not covered(a_obj, size, cand_obj):
                    a_obj, a_flag, size, _ = archive_add(a_obj, a_flag, size, cand_obj, cand)
                cand[i_out] = 1
                if tabu_until[i_out] <= step and -lp[i_out] > nt_gain:
                    nt_gain = -lp[i_out]
                    nt_out = i_out
                    nt_in = -1
        for j_in in range(n):
            if flags[j_in]:
                continue
            fits = True
            for j in range(m):
                if w[j_in, j] > res[j]:
                    fits = False
                    break
            if fits:
                for k in range(p):
                    cand_obj[k] = obj[k] + c[j_in, k]
                cand[j_in] = 1
                if not covered(a_obj, size, cand_obj):
                    a_obj, a_flag, size, _ = archive_add(a_obj, a_flag, size, cand_obj, cand)
                cand[j_in] = 0
                gain = lp[j_in]
                if gain > best_gain:
                    best_gain = gain
                    best_out = -1
                    best_in = j_in
                if tabu_until[j_in] <= step and gain > nt_gain:
                    nt_gain = gain
                    nt_out = -1
                    nt_in = j_in
            for i_out in range(n):
                if not flags[i_out]:
                    continue
                fits = True
                for j in range(m):
                    if w[j_in, j] - w[i_out, j] > res[j]:
                        fits = False
                        break
                if not fits:
                    continue
                for k in range(p):
                    cand_obj[k] = obj[k] + c[j_in, k] - c[i_out, k]
                cand[j_in] = 1
                cand[i_out] = 0
                if not covered(a_obj, size, cand_obj):
                    a_obj, a_flag, size, _ = archive_add(a_obj, a_flag, size, cand_obj, cand)
                cand[j_in] = 0
                cand[i_out] = 1
                gain = lp[j_in] - lp[i_out]
                if gain > best_gain:
                    best_gain = gain
                    best_out = i_out
                    best_in = j_in
                if tabu_until[j_in] <= step and tabu_until[i_out] <= step and gain > nt_gain:
                    nt_gain = gain
                    nt_out = i_out
                    nt_in = j_in
        if ascending and best_in < 0:
            ascending = False
        if not ascending:
            if walked >= tabu_steps or (nt_in < 0 and nt_out < 0):
                return a_obj, a_flag, size
            walked += 1
            best_in = nt_in
            best_out = nt_out
        step += 1
        if best_in >= 0:
            flags[best_in] = 1
            cand[best_in] = 1
            tabu_until[best_in] = step + tenure
            for k in range(p):
                obj[k] += c[best_in, k]
            for j in range(m):
                res[j] -= w[best_in, j]
        if best_out >= 0:
            flags[best_out] = 0
            cand[best_out] = 0
            tabu_until[best_out] = step + tenure
            for k in range(p):
                obj[k] -= c[best_out, k]
            for j in range(m):
                res[j] += w[best_out, j]


@jit
def memots_lite(c, w, caps, init_lams, draws, tabu_steps, tenure):
    """Simplified memetic search: greedy seeds, random parents, crossover, repair, ascent.

    ``draws`` holds one row of uniforms per iteration: two for parent choice,
    n for the crossover mask, p for the exponential weight sample.
    Returns (front_flags, front_objs).
    """
    n, m = w.shape
    p = c.shape[1]
    a_obj = np.zeros((16, p), dtype=np.int64)
    a_flag = np.zeros((16, n), dtype=np.uint8)
    size = 0
    for g in range(init_lams.shape[0]):
        fl = np.zeros(n, dtype=np.uint8)
        res = caps.copy()
        greedy_fill(c, w, fl, res, init_lams[g])
        z = np.zeros(p, dtype=np.int64)
        for i in range(n):
            if fl[i]:
                for k in range(p):
                    z[k] += c[i, k]
        a_obj, a_flag, size, _ = archive_add(a_obj, a_flag, size, z, fl)

    lam = np.zeros(p)
    for it in range(draws.shape[0]):
        row = draws[it]
        first = min(int(row[0] * size), size - 1)
        if size > 1:
            second = min(int(row[1] * (size - 1)), size - 2)
            if second >= first:
                second += 1
        else:
            second = first
        child = np.zeros(n, dtype=np.uint8)
        for i in range(n):
            child[i] = a_flag[first, i] if row[2 + i] < 0.5 else a_flag[second, i]
        total = 0.0
        for k in range(p):
            lam[k] = -np.log(1.0 - row[2 + n + k])
            total += lam[k]
        for k in range(p):
            lam[k] = lam[k] / total if total > 0.0 else 1.0 / p
        res = caps.copy()
        obj = np.zeros(p, dtype=np.int64)
        for i in range(n):
            if child[i]:
                for j in range(m):
                    res[j] -= w[i, j]
        repair(c, w, child, res, lam)
        for i in range(n):
            if child[i]:
                for k in range(p):
                    obj[k] += c[i, k]
        a_obj, a_flag, size, _ = archive_add(a_obj, a_flag, size, obj, child)
        a_obj, a_flag, size = _local_search(c, w, child, obj, res, lam, a_obj, a_flag, size, tabu_steps, tenure)
    return a_flag[:size].copy(), a_obj[:size].copy()
