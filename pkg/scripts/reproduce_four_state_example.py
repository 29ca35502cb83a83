"""Walk through the four-state example: weights, matrix, certificates, oracle."""

from fractions import Fraction

from synchrokit import distribution_matrix, is_eulerian, pseudo_eulerian_witness
from synchrokit.distributions import letter_distribution
from synchrokit.engine import one_cluster_candidates, sync_one_cluster, sync_pseudo_eulerian
from synchrokit.harness import four_state_example, oracle_shortest_sync


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def main():
    A = four_state_example()
    print("states 1..4 (stored 0..3), letters", ", ".join(A.alphabet))
    for a, name in enumerate(A.alphabet):
        print(f"  {name}: " + "  ".join(f"{q + 1}->{t + 1}" for q, t in enumerate(A.letter_map(a))))
    print("eulerian:", is_eulerian(A))
    w = pseudo_eulerian_witness(A)
    print("letter weights:", ", ".join(f"{n}={fmt(p)}" for n, p in zip(A.alphabet, w)))
    M = distribution_matrix(A, letter_distribution(w))
    for row in M:
        print("  [" + "  ".join(f"{fmt(x):>4}" for x in row) + " ]")

    cert, ver = sync_pseudo_eulerian(A, verify=True)
    print(f"pseudo-eulerian: word {A.render(cert.word)!r}, length {cert.length}, bound {cert.bound},"
          f" hypotheses ok: {ver.report.ok}")
    for a, ws, bound in one_cluster_candidates(A):
        print(f"one-cluster candidate {A.alphabet[a]}: r={ws.r}, W={[A.render(x) for x in ws.words]}, bound {bound}")
    cert = sync_one_cluster(A)
    print(f"one-cluster: word {A.render(cert.word)!r}, length {cert.length}, bound {cert.bound}")
    print(f"shortest reset word: {A.render(oracle_shortest_sync(A))!r}")


if __name__ == "__main__":
    main()
