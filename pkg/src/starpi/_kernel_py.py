"""Pure-Python tuple-evaluation kernel (fallback for the compiled ``_kernel``).

Integer data layout shared with the Cython version:

* product table in CSR form: ``offsets[i*dim + j] .. offsets[i*dim + j + 1]``
  index ``tab_k``/``tab_c`` with the nonzero structure constants of b_i b_j;
* ``monos`` is a flat list of ``n_monos * d`` slot indices (word order),
  ``coefs`` their integer coefficients;
* candidates are numbered consecutively slot after slot
  (``cand_counts[s]`` per slot); candidate c has Grassmann bitmask
  ``cand_mask[c]`` and base coordinates
  ``cand_idx/cand_val[cand_off[c]:cand_off[c+1]]``.

Tuples are visited in ``itertools.product`` order over the slots; a tuple
whose Grassmann masks overlap multiplies to zero in every monomial and is
skipped without evaluation.
"""


def mask_sign(a, b):
    inv = 0
    while b:
        low = b & -b
        inv += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if inv & 1 else 1


def find_nonvanishing(dim, offsets, tab_k, tab_c, monos, coefs, d, cand_counts,
                      cand_mask, cand_off, cand_idx, cand_val):
    """Return (first failing tuple or None, number of tuples evaluated)."""
    n_monos = len(coefs)
    starts = []
    acc = 0
    for n in cand_counts:
        starts.append(acc)
        acc += n
    if any(n == 0 for n in cand_counts):
        return None, 0

    table = {}
    for i in range(dim):
        for j in range(dim):
            lo, hi = offsets[i * dim + j], offsets[i * dim + j + 1]
            if hi > lo:
                table[(i, j)] = [(tab_k[e], tab_c[e]) for e in range(lo, hi)]

    vecs = []
    for c in range(acc):
        lo, hi = cand_off[c], cand_off[c + 1]
        vecs.append([(cand_idx[e], cand_val[e]) for e in range(lo, hi)])

    words = [monos[m * d:(m + 1) * d] for m in range(n_monos)]

    choice = [0] * d
    evaluated = 0

    def leaf():
        total = {}
        for m in range(n_monos):
            order = words[m]
            sign, cur = 1, 0
            for s in order:
                mk = cand_mask[starts[s] + choice[s]]
                if mk:
                    sign *= mask_sign(cur, mk)
                    cur |= mk
            vec = dict(vecs[starts[order[0]] + choice[order[0]]])
            for pos in range(1, d):
                right = vecs[starts[order[pos]] + choice[order[pos]]]
                new = {}
                for i, x in vec.items():
                    for j, w in right:
                        entry = table.get((i, j))
                        if entry:
                            xw = x * w
                            for k, c in entry:
                                new[k] = new.get(k, 0) + xw * c
                vec = {k: x for k, x in new.items() if x}
                if not vec:
                    break
            f = coefs[m] * sign
            for k, x in vec.items():
                total[k] = total.get(k, 0) + f * x
        return any(total.values())

    def dfs(s, used):
        nonlocal evaluated
        base = starts[s]
        for c in range(cand_counts[s]):
            mk = cand_mask[base + c]
            if mk & used:
                continue
            choice[s] = c
            if s == d - 1:
                evaluated += 1
                if leaf():
                    return True
            elif dfs(s + 1, used | mk):
                return True
        return False

    if d == 0:
        return None, 0
    if dfs(0, 0):
        return tuple(choice), evaluated
    return None, evaluated
