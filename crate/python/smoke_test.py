"""Smoke test for the compiled `modres` extension."""

import json

import modres


def main():
    cx = modres.Complex(3, 4, 1)
    assert cx.weights == [5, 1] and cx.dims == [1, 2], cx
    assert cx.exact and cx.simple_dim == 1

    assert modres.d_dim(5, 4, 3) == 3
    assert modres.catalan(6, 3) == 5
    assert [modres.verlinde_dim(5, k, 3) for k in range(1, 5)] == [14, 14, 6, 1]
    assert modres.r_polynomial(7) == "2f^2 - 7f + 7"
    assert modres.simple_dim(5, 7, 7) == 233

    report = modres.run({"command": "resolve", "p": 3, "n": 4, "k": 1})
    assert report["results"]["terms"] == [5, 1]
    assert all(c["status"] == "pass" for c in report["checks"])

    jobs = [{"command": "dims", "p": 5, "g": g} for g in (1, 2, 3)]
    batch = modres.run_batch(json.dumps(jobs), workers=3)
    assert [r["job"]["g"] for r in batch["jobs"]] == [1, 2, 3]
    assert batch["status"] == "pass"

    try:
        modres.d_dim(4, 4, 1)
    except ValueError as e:
        print("rejected p=4:", e)
    else:
        raise AssertionError("p=4 accepted")

    for cid, name, ok, details in modres.selftest(quick=True):
        print(f"criterion {cid:>2} {name:<24} {'PASS' if ok else 'FAIL'}")
        assert ok, details
    print("smoke test passed")


if __name__ == "__main__":
    main()
