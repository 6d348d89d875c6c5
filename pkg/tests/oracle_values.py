"""Reference values frozen from ``tests/oracles/generate.py`` (mpmath, 25 digits)."""

LOGGAMMA = {
    0.1: 2.2527126517342059599,
    0.5: 0.57236494292470008707,
    1.5: -0.12078223763524522235,
    2.5: 0.28468287047291915963,
    3.7: 1.4280723266653879219,
    7.0: 6.5792512120101009951,
    10.0: 12.801827480081469611,
    33.3: 82.603723581654952928,
    100.0: 359.13420536957539878,
    1234.5: 7550.5509010778948957,
    10000.0: 82099.717496442377273,
}
EULER = 0.57721566490153286061
GAMMA_PP1 = 1.9781119906559451108  # Gamma''(1) = gamma**2 + pi**2/6
GAMMA_2_3 = 1.3541179394264004169

EXP_LOGCDF_20 = -2.0611536245627349585e-9

# u(t) for WeibullMin(2)
AUX_WMIN2 = {
    0.5: 0.5456413607650470421,
    2.0: 0.22633852499058728968,
    3.0: 0.15863563986398753864,
    5.0: 0.098109430731538791444,
}
# a_{2n} / a_n for WeibullMin(2)
WMIN2_RATIO = {10**5: 0.97319778334366802624, 10**16: 0.99095662030976255065}

H_FRECHET = {
    (0.5, 1.5): 2.1511069801549289, (0.5, 2.0): 1.6739764335716715463, (0.5, 3.0): 1.2486645848932787318,
    (1.0, 1.5): 1.6218604324326575279, (1.0, 2.0): 1.3862943611198906188, (1.0, 3.0): 1.1575038064963014187,
    (2.0, 1.5): 0.89478293985960113942, (2.0, 2.0): 0.75503790036699880449, (2.0, 3.0): 0.60819766216224657297,
    (5.0, 1.5): -0.086766035094462785094, (5.0, 2.0): -0.18146158199285947037, (5.0, 3.0): -0.28796105159968468298,
}
H_WEIBULL = {
    (0.5, 1.5): -0.04611759718129048275,
    (1.0, 1.5): 0.81093021621632876396, (1.0, 2.0): 0.69314718055994530942, (1.0, 3.0): 0.5493061443340548457,
    (2.0, 1.5): 0.51705926255409196846, (2.0, 2.0): 0.46735582791521787705, (2.0, 3.0): 0.40546510810816438198,
    (5.0, 1.5): -0.23490978138649750778, (5.0, 2.0): -0.29068911451182665066, (5.0, 3.0): -0.35994786894004766082,
}
H_GUMBEL = {1.5: 1.4579597995949835906, 2.0: 1.3862943611198906188, 3.0: 1.3013448427221918824}

# |H_2(g_n) - H_2(limit)|, exact
EXP_H2_ERR = {100: 0.0050125418235442820431, 1000: 0.00050012504168229791927, 10000: 0.000050001250041668229229}
PARETO1_H2_ERR = {100: 0.000025000312505208430992, 1000: 2.5000003125000520834e-7, 10000: 2.5000000031250000275e-9}

MOMENT_EXP_1E4 = 0.57726566406819952811
MOMENT_PARETO2_1E4 = 1.7724760067171166487
MOMENT_UNIFORM_1E4 = -0.99990000999900009999

SHANNON_GUMBEL = 1.5772156649015328606
SHANNON_FRECHET = {0.5: 3.4247941752642525897, 1.0: 2.1544313298030657212, 2.0: 1.1726763167923539815, 5.0: 0.083220885447739058127}
SHANNON_WEIBULL = {0.5: 1.115931515658419028, 1.0: 1.0, 2.0: 0.59546065189082112089, 5.0: -0.14766538051287408612}

TAIL_EXP_LHS_X2 = 0.13533528323661269189
TAIL_EXP_RHS_X2_EPS02 = 0.1119744

H1_C1 = 15.993005740151188702
H1_INTEGRAL = 3.9629287970646703315  # eps = (0.2, 0.2, 0.2, 0.3, 0.2)
