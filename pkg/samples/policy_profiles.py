"""Sample code comparing Gaussian and q-Gaussian exploration policies"""
import sys

import numpy as np

from meddpy.policy import admissible_q_range, solve_normalization_constant
from meddpy.qgauss import (QGaussian1D, QGaussianND, escort_transform,
                           pdf_1d, pdf_nd)

alpha = 1.0
x = np.linspace(-6.0, 6.0, 241)


def write_table(filename, header, columns):
    with open(filename, 'w') as out:
        out.write(','.join(header) + '\n')
        for row in zip(*columns):
            out.write(','.join('{:.8g}'.format(v) for v in row) + '\n')


def qgaussian_scale(value, q, n_u, Quu_inv_det):
    C = solve_normalization_constant(value, alpha, q, n_u,
                                     Quu_inv_det=Quu_inv_det)
    return 2.0 * ((q - 1.0) * value + C * alpha) / (n_u + 2.0 - n_u * q)


# Univariate q-Gaussians with unit q-variance. q < 1 has compact support,
# q = 1 is the Gaussian and q = 2 the Cauchy distribution.
shape_q = [0.5, 1.0, 1.5, 2.0, 2.5]
write_table('qgaussian_shapes.csv',
            ['x'] + ['q_' + str(q) for q in shape_q],
            [x] + [pdf_1d(QGaussian1D(q), x) for q in shape_q])

# Policy densities of a scalar control with Q_uu = 1 at q = 1.5. The
# Gaussian ignores the value estimate, the q-Gaussian and the escort it is
# sampled from widen as the value estimate grows.
q = 1.5
columns = [x, pdf_1d(QGaussian1D(1.0, sigma2_q=alpha), x)]
header = ['x', 'gaussian']
for value in [0.1, 1.0, 10.0]:
    dist = QGaussianND(q, [0.0], [[qgaussian_scale(value, q, 1, 1.0)]])
    columns.append(pdf_nd(dist, x[:, None]))
    columns.append(pdf_nd(escort_transform(dist), x[:, None]))
    header += ['qgauss_V_' + str(value), 'escort_V_' + str(value)]
write_table('policy_densities.csv', header, columns)

# Covariance multiplier of Q_uu^-1 against the value estimate for a
# two-dimensional control with |Q_uu^-1| = 1.
n_u = 2
low_q, high_q = admissible_q_range(n_u)
print('Admissible q for n_u=' + str(n_u) + ': (' + str(low_q) + ', '
      + str(high_q) + ')', file=sys.stderr)
profile_q = [1.2, 1.5, 1.8]
values = np.logspace(-2, 3, 26)
write_table('policy_profiles.csv',
            ['value', 'gaussian'] + ['q_' + str(q) for q in profile_q],
            [values, np.full(values.shape, alpha)]
            + [[qgaussian_scale(v, q, n_u, 1.0) for v in values]
               for q in profile_q])
