#!/usr/bin/env python3
# Copyright 2026 The corelevel-qpe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the FCIDUMP files under data/ with PySCF.

Recipe (pinned):
  * RHF, conv_tol 1e-12, point-group symmetry on (ORBSYM in Molpro numbering).
  * H2O: cc-pVDZ with Cartesian d functions, R(O-H) = 0.9772 A,
    angle(H-O-H) = 104.52 deg, 9 lowest canonical orbitals kept, no frozen
    core (10 electrons in 9 orbitals). Core energy = nuclear repulsion.
    The same geometry with spherical d functions goes to
    h2o_ccpvdz_sph_10e9o.fcidump for comparison.
  * H2: STO-3G and 6-31G at R = 0.7414 A.
  * H3+: STO-3G equilateral triangle, side 0.9 A.
"""
import os
import sys

import numpy as np
from pyscf import ao2mo, gto, scf, symm
from pyscf.tools import fcidump

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def dump(mol, norb, path):
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    c = mf.mo_coeff[:, :norb]
    h1 = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(8, ao2mo.full(mol, c), norb)
    ids = symm.label_orb_symm(mol, mol.irrep_id, mol.symm_orb, c)
    molpro = [fcidump.ORBSYM_MAP[mol.groupname][i] for i in ids]
    names = [symm.irrep_id2name(mol.groupname, i) for i in ids]
    fcidump.from_integrals(path, h1, eri, norb, mol.nelectron, mol.energy_nuc(),
                           ms=0, orbsym=molpro, tol=1e-15, float_format=" %.17e")
    print(path, "E_HF =", mf.e_tot, "orbsym =", names, molpro)


def main():
    os.makedirs(OUT, exist_ok=True)
    r, th = 0.9772, np.deg2rad(104.52)
    for cart, name in ((True, "h2o_ccpvdz_10e9o"), (False, "h2o_ccpvdz_sph_10e9o")):
        h2o = gto.M(atom=[["O", (0, 0, 0)],
                          ["H", (0, r * np.sin(th / 2), r * np.cos(th / 2))],
                          ["H", (0, -r * np.sin(th / 2), r * np.cos(th / 2))]],
                    basis="cc-pvdz", symmetry=True, cart=cart, unit="Angstrom")
        dump(h2o, 9, os.path.join(OUT, name + ".fcidump"))

    for basis, norb, name in (("sto-3g", 2, "h2_sto3g"), ("6-31g", 4, "h2_631g")):
        h2 = gto.M(atom="H 0 0 0; H 0 0 0.7414", basis=basis, symmetry="D2h", unit="Angstrom")
        dump(h2, norb, os.path.join(OUT, name + ".fcidump"))

    a = 0.9
    h3 = gto.M(atom=[["H", (0, 0, 0)], ["H", (a, 0, 0)], ["H", (a / 2, a * np.sqrt(3) / 2, 0)]],
               basis="sto-3g", charge=1, symmetry="C2v", unit="Angstrom")
    dump(h3, 3, os.path.join(OUT, "h3plus_sto3g.fcidump"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
