"""
Bilinear interpolation: classical oracle, circuit builders and the image driver.

- oracle.py: fixed-point reference colours and modular arithmetic
- bilerp.py: scale-down / scale-up circuit generators
- driver.py: whole-image runs on the oracle or the permutation simulator
"""
