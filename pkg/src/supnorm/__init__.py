"""Amplified sup-norm machinery for cusp forms of square-free level.

Library layout:

- :mod:`supnorm.arithmetic`   -- square-free moduli, Dirichlet characters, valuations
- :mod:`supnorm.kloosterman`  -- twisted Kloosterman sums and the Weil-type reference bound
- :mod:`supnorm.specfun`      -- Bessel kernels, Whittaker weights, inequality checkers
- :mod:`supnorm.transforms`   -- the J_A(x) x^{-B} test function and its Bessel transforms
- :mod:`supnorm.oscillatory`  -- smooth windows, Poisson decay, kernel integrals, rational approximation
- :mod:`supnorm.counting`     -- congruence box counting, congruence reduction, matrix counting
- :mod:`supnorm.amplifier`    -- synthetic Hecke systems and the amplifier identity
- :mod:`supnorm.exponents`    -- exact-rational exponent calculus and parameter optimization
- :mod:`supnorm.verify`       -- the property-suite driver behind ``supnorm verify``
"""

__version__ = "0.1.0"
