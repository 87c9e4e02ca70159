#!/usr/bin/env python3
"""Writes the JSON fixtures under fixtures/ from concrete matrix and permutation models."""
import itertools
import json
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def table_from(elements, mul, key):
    index = {key(e): i for i, e in enumerate(elements)}
    return [[index[key(mul(a, b))] for b in elements] for a in elements]


def perm_group(n, even_only=False):
    perms = []
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        if even_only and inv % 2:
            continue
        perms.append(p)
    table = table_from(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), lambda p: p)
    labels = ["[" + ",".join(map(str, p)) + "]" for p in perms]
    return perms, {"order": len(perms), "mult_table": table, "labels": labels}


def cyclic(n):
    return {"order": n, "mult_table": [[(a + b) % n for b in range(n)] for a in range(n)], "labels": [f"r^{a}" for a in range(n)]}


def dihedral_mats(n):
    c, s = np.cos(2 * np.pi / n), np.sin(2 * np.pi / n)
    r = np.array([[c, -s], [s, c]])
    f = np.array([[1.0, 0.0], [0.0, -1.0]])
    return [np.linalg.matrix_power(f, a) @ np.linalg.matrix_power(r, k) for a in range(2) for k in range(n)]


def dihedral(n):
    mats = dihedral_mats(n)
    key = lambda m: tuple(np.round(m, 9).ravel())
    labels = [("s r^" if a else "r^") + str(k) for a in range(2) for k in range(n)]
    return {"order": 2 * n, "mult_table": table_from(mats, lambda a, b: a @ b, key), "labels": labels}


def quaternion_mats():
    one = np.eye(2, dtype=complex)
    i = np.array([[1j, 0], [0, -1j]])
    j = np.array([[0, 1], [-1, 0]], dtype=complex)
    k = i @ j
    return [s * u for u in (one, i, j, k) for s in (1, -1)]


def quaternion():
    mats = quaternion_mats()
    key = lambda m: tuple(np.round(m, 9).ravel())
    return {"order": 8, "mult_table": table_from(mats, lambda a, b: a @ b, key),
            "labels": ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]}


def mat_json(m):
    m = np.asarray(m, dtype=complex)
    return {"rows": m.shape[0], "cols": m.shape[1],
            "data": [[float(z.real), float(z.imag)] for z in m.ravel()]}


def perm_matrix(p):
    n = len(p)
    m = np.zeros((n, n))
    for i in range(n):
        m[p[i], i] = 1.0
    return m


def unit(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


def members(perms, pred):
    return [i for i, p in enumerate(perms) if pred(p)]


def write(rel, obj):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1) + "\n")


def main():
    s3_perms, s3 = perm_group(3)
    s4_perms, s4 = perm_group(4)
    _, a4 = perm_group(4, even_only=True)
    groups = {"z2": cyclic(2), "z4": cyclic(4), "z6": cyclic(6), "s3": s3, "d4": dihedral(4),
              "q8": quaternion(), "a4": a4, "s4": s4}
    for name, g in groups.items():
        write(f"groups/{name}.json", g)
    bad = cyclic(3)
    bad["mult_table"][1] = [1, 1, 2]
    write("groups/bad_latin.json", bad)

    write("reps/s3_perm.json", {"group": "../groups/s3.json", "dim": 3,
                                "matrices": [mat_json(perm_matrix(p)) for p in s3_perms]})
    write("reps/s4_perm.json", {"group": "../groups/s4.json", "dim": 4,
                                "matrices": [mat_json(perm_matrix(p)) for p in s4_perms]})
    write("reps/d4_square.json", {"group": "../groups/d4.json", "dim": 2,
                                  "matrices": [mat_json(m) for m in dihedral_mats(4)]})
    write("reps/q8_spin.json", {"group": "../groups/q8.json", "dim": 2,
                                "matrices": [mat_json(m) for m in quaternion_mats()]})

    exp = "experiments/"
    write(exp + "analyze_s3.json", {"group": "../groups/s3.json"})
    write(exp + "analyze_bad.json", {"group": "../groups/bad_latin.json"})
    for name in ("s3", "s4"):
        write(exp + f"irreps_{name}.json", {"group": f"../groups/{name}.json"})
    write(exp + "decompose_s3_perm.json", {"rep": "../reps/s3_perm.json", "seed": 11})
    write(exp + "decompose_s4_regular.json", {"rep": {"regular": "../groups/s4.json"}, "seed": 11})
    write(exp + "galois_s3_regular.json", {"rep": {"regular": "../groups/s3.json"}})
    write(exp + "galois_d4_regular.json", {"rep": {"regular": "../groups/d4.json"}})
    write(exp + "galois_s3_perm.json", {"rep": "../reps/s3_perm.json"})
    write(exp + "modular_m3.json", {"dim": 3, "state": "random", "seed": 5})
    write(exp + "modular_witness.json", {
        "state": mat_json(np.diag([2 / 3, 1 / 3])), "seed": 2,
        "kms_witness": {"a": mat_json(unit(2, 0, 1)), "b": mat_json(unit(2, 1, 0))}})
    write(exp + "modular_diagonal.json", {"dim": 3, "algebra": "diagonal", "state": "random", "seed": 9})
    swap = perm_matrix((1, 0))
    write(exp + "crossed_diag_swap.json", {"base": {"kind": "diagonal", "dim": 2}, "group": "../groups/z2.json",
                                           "action": "ad", "unitaries": [mat_json(np.eye(2)), mat_json(swap)]})
    write(exp + "crossed_diag_swap_table.json", {"base": {"kind": "diagonal", "dim": 2}, "group": "../groups/z2.json",
                                                 "action": "table", "tables": [mat_json(np.eye(2)), mat_json(swap)]})
    write(exp + "crossed_m2_phase.json", {"base": {"kind": "full", "dim": 2}, "group": "../groups/z2.json",
                                          "action": "ad",
                                          "unitaries": [mat_json(np.eye(2)), mat_json(np.diag([1.0, -1.0]))]})

    a3 = members(s3_perms, lambda p: sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0)
    write(exp + "martingale_s3.json", {"rep": "../reps/s3_perm.json", "chain": [list(range(6)), a3, [0]],
                                       "x": mat_json(unit(3, 0, 0)), "seed": 3})
    even = lambda p: sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0
    a4m = members(s4_perms, even)
    v4 = members(s4_perms, lambda p: all(p[p[i]] == i for i in range(4)) and even(p))
    rng = np.random.default_rng(17)
    x4 = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    write(exp + "martingale_s4.json", {"rep": "../reps/s4_perm.json", "chain": [list(range(24)), a4m, v4, [0]],
                                       "x": mat_json(x4), "seed": 3})


if __name__ == "__main__":
    main()
