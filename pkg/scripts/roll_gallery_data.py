"""Regenerate the stored gallery data (section quadric of Σ₀, elliptic cone matrix).

Both are pseudo-random with a fixed seed and are re-rolled until they pass the
validation the gallery expects.  Run from the repository root:

    python3 scripts/roll_gallery_data.py [--seed N] [--check]
"""

import argparse
import random
from pathlib import Path

from syzstab import gallery as G
from syzstab.ideals import hilbert_fn
from syzstab.koszul import betti_table
from syzstab.polyring import Polynomial, format_poly, sym_basis

DATA = Path(__file__).resolve().parents[1] / "src" / "syzstab" / "data"
SECTION_ROWS = [[1], [6, 5], [5, 6], [1]]
NAMES6 = tuple(f"z{i}" for i in range(6))
NAMESX = tuple(f"x{i}" for i in range(6))


def roll_quadric(rng: random.Random) -> Polynomial:
    terms = {m: rng.randint(-3, 3) for m in sym_basis(6, 2)}
    while terms[(2, 0, 0, 0, 0, 0)] == 0:
        terms[(2, 0, 0, 0, 0, 0)] = rng.randint(-3, 3)
    return Polynomial(6, terms)


def section_ok(Q: Polynomial) -> bool:
    S = G.del_pezzo_singular()
    X = G.quadric_section(S, Q, name="candidate")
    if X.piece(2).dim != 6:
        return False
    return betti_table(X, pmax=4, qmax=3).rows() == SECTION_ROWS


def roll_linear(rng: random.Random) -> Polynomial:
    terms = {}
    for i in range(1, 6):
        e = [0] * 6
        e[i] = 1
        terms[tuple(e)] = rng.randint(-3, 3)
    return Polynomial(6, terms)


def roll_cone(rng: random.Random) -> list:
    zero = Polynomial(6, {})
    M = [[zero] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            f = roll_linear(rng)
            M[i][j] = f
            M[j][i] = f.scale(-1)
    return M


def cone_ok(M: list) -> bool:
    try:
        E = G.elliptic_normal_curve(M)
    except ValueError:
        return False
    return all(hilbert_fn(E, q) == 5 * q for q in range(1, 5))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--check", action="store_true", help="only validate the stored files")
    args = ap.parse_args()

    if args.check:
        print("section:", section_ok(G.stored_section_quadric()))
        print("cone:", cone_ok(G.stored_cone_matrix()))
        return

    rng = random.Random(args.seed)
    tries = 0
    while True:
        tries += 1
        Q = roll_quadric(rng)
        if section_ok(Q):
            break
    (DATA / "sigma0_section.txt").write_text(
        f"# quadric section of the singular quintic del Pezzo, seed {args.seed}, attempt {tries}\n"
        f"{format_poly(Q, NAMES6)}\n"
    )
    print(f"section quadric after {tries} attempt(s): {format_poly(Q, NAMES6)}")

    tries = 0
    while True:
        tries += 1
        M = roll_cone(rng)
        if cone_ok(M):
            break
    lines = [", ".join(format_poly(f, NAMESX) for f in row) for row in M]
    (DATA / "elliptic_cone.txt").write_text(
        f"# antisymmetric matrix of linear forms in x1..x5, seed {args.seed}, attempt {tries}\n"
        + "\n".join(lines) + "\n"
    )
    print(f"cone matrix after {tries} attempt(s)")


if __name__ == "__main__":
    main()
