#!/usr/bin/env python3
"""Headline dimension and kernel results over Q.

Covers the exceptional corner: Der(O) of type G_2 (dim 14), IDer(Albert)
of type F_4 (dim 52), the TKK dimensions 8 / 78 / 133, and the simple
connectedness statements (uce kernels vanish).  Pass --fast to skip the
two large uce computations.
"""
import argparse
import time

from rograd.algebras import matrix_algebra, op_span_dim, split_octonions, standard_derivation
from rograd.centext import angle, uce
from rograd.jordan import albert_algebra, rectangular_pair
from rograd.lie import ider, instr, sl_algebra, tkk
from rograd.rings import QQ


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fast", action="store_true", help="skip the large uce runs")
    args = ap.parse_args()

    t0 = time.time()
    O = split_octonions(QQ)
    sd = [
        standard_derivation(O, O.basis_vec(i), O.basis_vec(j))
        for i in range(8)
        for j in range(i + 1, 8)
    ]
    print(f"dim StanDer(O)            = {op_span_dim(sd, QQ)}   (type G_2)")
    print(f"dim <O, O>                = {angle(O).module.free_rank}")

    A = albert_algebra(QQ)
    print(f"dim Albert                = {A.dim}")
    print(f"dim IDer(Albert)          = {ider(A).dim}   (type F_4)")

    V8 = rectangular_pair(1, 2, O)
    print(f"dim instr(M(1,2,O))       = {instr(V8).dim}")
    L8 = tkk(V8)
    print(f"dim TKK(M(1,2,O))         = {L8.dim}")
    LA = tkk(A.pair())
    print(f"dim TKK(Albert, Albert)   = {LA.dim}")
    L3 = sl_algebra(3, matrix_algebra(1, QQ))
    print(f"dim sl_3(Q)               = {L3.dim}")
    print(f"uce(sl_3(Q)) kernel       = {uce(L3).total_kernel()}")
    if not args.fast:
        print(f"uce(TKK(M(1,2,O))) kernel = {uce(L8).total_kernel()}")
        print(f"uce(TKK(Albert)) kernel   = {uce(LA).total_kernel()}")
    print(f"# done in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
