"""Smoke test for the qgroup Python bindings.

Build and install the extension first:

    pip install --no-build-isolation -e crates/qgroup-py

then run `python python/smoke_test.py`.
"""

import json

import qgroup


def main():
    alg = qgroup.Algebra(2, 3)
    assert (alg.p1, alg.p2, alg.N, alg.dim) == (2, 3, 24, 432)
    header = alg.header()
    assert header["N"] == 24 and header["phi_digest"] == alg.phi_digest

    e1, e2, f1, f2, k = (alg.generator(g) for g in ("e1", "e2", "f1", "f2", "K"))
    kinv = alg.generator("Kinv")
    one = alg.one()

    # nilpotency, torsion of K and commuting of the two copies
    assert (e1 ** 2).is_zero() and (f2 ** 3).is_zero()
    assert k ** 12 == one and k * kinv == 1
    assert e1 * f2 == f2 * e1

    # counit and antipode on generators
    assert e1.counit() == "0" and k.counit() == "1"
    x = e1 * f1 + 3 * k - e2
    assert (x * one) == x and (one * x) == x

    # S is an anti-homomorphism
    assert (e1 * f1).antipode() == f1.antipode() * e1.antipode()

    # exact JSON round trip
    assert alg.element_from_json(x.to_json()) == x
    assert all(len(t[1]) == 5 for t in x.terms())

    # indexing round trip
    for i in (0, 1, 100, 431):
        assert alg.index(alg.monomial(i)) == i

    # drivers
    report = qgroup.verify(2, 3, "relations", sample=50, seed=1)
    assert report["summary"]["failed"] == 0, report["summary"]
    assert report["header"]["N"] == 24
    again = qgroup.verify(2, 3, "relations", sample=50, seed=1)
    assert json.dumps(report, sort_keys=True) == json.dumps(again, sort_keys=True)

    block = qgroup.dump(2, 3, "block 2 3")
    assert block["block"] == "Q(2,3)" and len(block["elements"]) == 36

    try:
        qgroup.Algebra(2, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("non-coprime parameters accepted")

    print("qgroup python smoke test passed")


if __name__ == "__main__":
    main()
