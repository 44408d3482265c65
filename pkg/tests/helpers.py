"""Plain-Python reference checks shared by several test modules."""

from itertools import product

from diophgal.algebra import reduce_mod_monic


def zero_set(polys, names, p):
    """All points of F_p^names where every polynomial vanishes."""
    out = set()
    for point in product(range(p), repeat=len(names)):
        values = dict(zip(names, point))
        if all(q.evaluate(values) == 0 for q in polys):
            out.add(point)
    return out


def quotient_zero(poly, modulus, gen, values):
    """Whether ``poly`` with ``values`` plugged in vanishes in F_p[gen]/(modulus)."""
    reduced = reduce_mod_monic(poly.partial_evaluate(values), modulus, gen)[1]
    return reduced.is_zero()


def bundled_witness(name):
    from diophgal.cli import scenario_witness_text
    return scenario_witness_text(name)
