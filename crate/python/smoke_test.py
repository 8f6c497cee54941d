"""Smoke test for the compiled `leavitt` extension module."""

import leavitt


def main() -> None:
    rose2 = leavitt.Graph.bundled("rose2")
    assert rose2.vertices == ["v"]
    report = leavitt.classify(rose2, "rose2")
    assert report["schema"] == "leavitt.classification/1"
    assert report["verdicts"]["purely_infinite_simple"] is True

    loop = leavitt.Graph(["v"], [("e", "v", "v")])
    verdicts = leavitt.classify(loop)["verdicts"]
    assert not any(verdicts.values())
    assert not loop.condition_k()

    alg = leavitt.Algebra(rose2)
    assert alg.normalize("e1.g(e1) + e2.g(e2)") == "v"
    assert alg.normalize("g(e1).e2") == "0"
    assert alg.star("2*e1.g(e2)") == "2*e2;g(e1)"
    w = alg.vertex_pi("v")
    assert w["verified"] and w["alpha"] == [["g(e1)"], ["g(e2)"]]
    r = alg.reduce("v + e1")
    assert r["verified"] and r["vertex"] == "v"

    twin = leavitt.Graph.bundled("twin-roses")
    assert leavitt.Algebra(twin).properly_infinite("a + c")["verified"]
    try:
        leavitt.Algebra(loop).vertex_pi("v")
    except ValueError as e:
        assert "|CSP(v)| < 2" in str(e)
    else:
        raise AssertionError("loop vertex accepted")

    m = leavitt.GraphMonoid(rose2)
    assert m.equal("v", "2v") == ["v", "2*v"]
    assert m.decompose_2x_3y("v") == ("v", "v")
    point = leavitt.GraphMonoid(leavitt.Graph(["w"], []))
    assert point.fred(2, "3w", "4w", "2w") == ["w", "0", "2*w"]
    try:
        point.decompose_2x_3y("w")
    except ValueError as e:
        assert "irreducible" in str(e)
    else:
        raise AssertionError("edgeless w accepted")

    assert leavitt.selfcheck(twin, seed=7, trials=10)["passed"]
    print("smoke test passed")


if __name__ == "__main__":
    main()
