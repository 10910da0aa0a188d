"""Grün's Sylow-structure and trivial-action theorems, checked by brute force.

Submodules:

* :mod:`gruenkit.arith` -- exact integer number theory (orders, valuations, |GL_n(F_q)|)
* :mod:`gruenkit.matgroup` -- explicitly enumerated matrix groups over Z/p^e
* :mod:`gruenkit.gruen` -- predictions and their verification against the matrix oracle
* :mod:`gruenkit.classgrp` -- class-group descent deductions
* :mod:`gruenkit.cli` -- command-line interface
"""

__version__ = "0.1.0"
