"""Shared test oracles."""

import itertools

from cubicenc.poly import Registry, parse

# shield constraints of x^3 y^2 z with v the replacement variable
EXAMPLE = ["x^2 - w_1", "x*w_1 - w_2", "y*z - w_3", "y*w_3 - w_4", "w_2*w_4 - v"]


def _normal(texts, rename):
    out = set()
    for text in texts:
        poly = parse(text, Registry(), create=True)
        terms = sorted((c, tuple(sorted((rename.get(v.name, v.name), e) for v, e in m)))
                       for m, c in poly.items())
        sign = 1 if min(terms, key=lambda t: t[1])[0] > 0 else -1
        out.add(tuple(sorted((sign * c, m) for c, m in terms)))
    return out


def same_up_to_renaming(got, got_top, want, want_top, fixed=("x", "y", "z")):
    """True if some bijection of fresh names maps one constraint set onto the other."""
    def fresh(texts):
        reg = Registry()
        for t in texts:
            parse(t, reg, create=True)
        return [v.name for v in reg if v.name not in fixed]

    got_fresh, want_fresh = fresh(got), fresh(want)
    if len(got) != len(want) or len(got_fresh) != len(want_fresh):
        return False
    target = _normal(want, {})
    for perm in itertools.permutations(want_fresh):
        rename = dict(zip(got_fresh, perm))
        if rename.get(got_top) == want_top and _normal(got, rename) == target:
            return True
    return False
