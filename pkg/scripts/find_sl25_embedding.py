"""Search SL(2,11) for a copy of SL(2,5) acting without fixed nonzero vectors.

Prints the first generator pair found and checks it against the frozen fixture.
"""
import argparse
import time

from gclassgraph.constructions import SL25_GENERATORS, example1_pair, search_sl25_in_sl211


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.parse_args()
    t0 = time.perf_counter()
    A, B = search_sl25_in_sl211()
    print(f"found in {time.perf_counter() - t0:.3f}s: A={A} B={B}")
    print("matches frozen fixture:", (A, B) == SL25_GENERATORS)
    pair = example1_pair((A, B))
    print(f"|G|={pair.G.order} |N|={pair.N.order} |N_H(P)|={pair.named['NP'].order}")


if __name__ == "__main__":
    main()
