"""How fast the lattice dispersion approaches |k|.

The positive branch sin(h k) / h differs from k by about k^3 h^2 / 6, so
halving the mesh should cut the error by four.  When k is an allowed torus
momentum for a given h we also read the eigenvalue off the momentum symbol
of the block Hamiltonian itself.
"""

import numpy as np

from lattice_dirac import continuum_consistency

print("k = 1, d = 1")
print("     h      branch          error      order")
for row in continuum_consistency(1.0, [0.2, 0.1, 0.05, 0.025]):
    order = "" if row["order"] is None else f"{row['order']:.4f}"
    print(f"{row['h']:6.3f}  {row['branch']:.12f}  {row['error']:.3e}  {order}")

k = [np.pi / 2, np.pi / 4]
print("\nk = (pi/2, pi/4), d = 2, eigenvalue taken from the torus symbol")
print("     h     M   torus eigenvalue    |k| - eigenvalue")
for row in continuum_consistency(k, [0.5, 0.25, 0.125], on_torus=True):
    print(f"{row['h']:6.3f}  {row['M']:3d}   {row['torus_eigenvalue']:.12f}    {row['error']:.3e}")
