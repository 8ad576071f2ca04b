"""Regenerate faddeeva_reference.csv: w(z) = exp(-z^2) erfc(-iz) at 40 digits.

200 points with |z| <= 30. Lower-half-plane points keep y^2 - x^2 small so the
reflection term stays representable, and points near zeros of w are skipped
because relative error is meaningless there.
"""
import csv
import random
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
rng = random.Random(20240611)


def w(z):
    z = mp.mpc(z)
    return mp.exp(-z * z) * mp.erfc(-1j * z)


pts = [0j, 1j, 1 + 0j, -1 + 0j, 0.5 + 0.5j, 30 + 0j, 30j, 1e-3 + 1e-3j]
while len(pts) < 150:
    r = 30 * rng.random() ** 2
    th = mp.pi * rng.random()
    pts.append(complex(r * mp.cos(th), r * mp.sin(th)))
while len(pts) < 200:
    x = rng.uniform(-8, 8)
    y = -rng.uniform(0, 6)
    if y * y - x * x > 40:
        continue
    z = complex(x, y)
    val = w(z)
    if abs(val) < 1e-3 * abs(2 * mp.exp(-mp.mpc(z) ** 2)):
        continue
    pts.append(z)

out = Path(__file__).with_name("faddeeva_reference.csv")
with out.open("w", newline="") as fh:
    wr = csv.writer(fh)
    wr.writerow(["re_z", "im_z", "re_w", "im_w"])
    for z in pts:
        val = w(z)
        wr.writerow([repr(z.real), repr(z.imag),
                     mp.nstr(val.real, 20, min_fixed=-1, max_fixed=-1),
                     mp.nstr(val.imag, 20, min_fixed=-1, max_fixed=-1)])
