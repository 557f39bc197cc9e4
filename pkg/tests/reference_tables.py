"""Printed sizing rows used as reproduction targets: (level, TF, salaries $M, budget $M)."""

HERD_ROWS = [
    (1900, 21784, 5.59, 16.45),
    (1500, 17198, 4.42, 12.99),
    (1200, 13758, 3.53, 10.39),
    (1000, 11465, 2.94, 8.66),
    (850, 9745, 2.50, 7.36),
    (750, 8599, 2.21, 6.49),
    (400, 4586, 1.18, 3.46),
    (200, 2293, 0.59, 1.73),
]

DOCTORATE_ROWS = [
    (800, 15718, 3.76, 11.05),
    (700, 13753, 3.29, 9.67),
    (600, 11789, 2.82, 8.29),
    (500, 9824, 2.35, 6.91),
    (400, 7859, 1.88, 5.52),
    (200, 3929, 0.94, 2.76),
]

PUBLICATION_ROWS = [
    (20000, 26744, 6.82, 20.07),
    (14000, 18721, 4.78, 14.05),
    (10000, 13372, 3.41, 10.04),
    (6000, 8023, 2.04, 6.02),
    (3000, 4011, 1.02, 3.01),
    (1000, 1337, 0.34, 1.00),
]

# Institution E spot checks: reported capacity / salaries and the sized estimates
INST_E_PUBLICATIONS = 7649
INST_E_PUB_SIZED_TF = 10_200.0
INST_E_PUB_SIZED_SALARIES = 2.61
INST_E_ACTUAL_TF = 10_900.0
INST_E_ACTUAL_SALARIES = 2.65
INST_E_HERD = 845.0

# half a unit in the last printed place, plus float slack for exact .005 ties
MONEY_TOL = 0.01 + 1e-9
