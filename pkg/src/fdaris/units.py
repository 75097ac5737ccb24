"""dB/dBm conversions and physical constants.

All internal math in this package is linear (watts, meters, radians);
dB-scale values exist only at configuration boundaries.
"""

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


def db_to_linear(value_db):
    return 10.0 ** (np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value):
    return 10.0 * np.log10(value)


def dbm_to_watts(value_dbm):
    return 10.0 ** ((np.asarray(value_dbm, dtype=float) - 30.0) / 10.0)


def watts_to_dbm(value_w):
    return 10.0 * np.log10(value_w) + 30.0
