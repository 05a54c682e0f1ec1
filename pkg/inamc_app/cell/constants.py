"""
Constants of the whole-cell action potential model hosting the INa Markov chain.

Units: mV, ms, mmol/L, uA/uF; geometry in cm and uL.
"""

# imports
import math

# physical constants
GAS_CONSTANT = 8314.0
FARADAY = 96485.0
TEMPERATURE = 310.0
RT_OVER_F = GAS_CONSTANT * TEMPERATURE / FARADAY
F_OVER_RT = 1.0 / RT_OVER_F

# specific membrane capacitance, uF/cm^2
MEMBRANE_CAPACITANCE = 1.0

# standard extracellular concentrations
NA_OUT = 140.0
K_OUT = 4.5
CA_OUT = 1.8

# cell geometry
CELL_LENGTH = 0.01
CELL_RADIUS = 0.0011
V_CELL = 3.801e-5
A_GEO = 2.0 * math.pi * CELL_RADIUS**2 + 2.0 * math.pi * CELL_RADIUS * CELL_LENGTH
A_CAP = 2.0 * A_GEO
V_MYO = 2.58468e-5
V_NSR = 0.0552 * V_CELL
V_JSR = 0.0048 * V_CELL

# current to concentration flux conversion, mmol/L per (uA/uF ms)
FLUX_FACTOR = A_CAP / (V_MYO * FARADAY)

# initial values
INITIAL_VM = -95.0
INITIAL_NAI = 7.9
INITIAL_KI = 147.23
INITIAL_CAI = 1.2e-4
INITIAL_CANSR = 1.8
INITIAL_CAJSR = 1.8
INITIAL_GATES = {
    "d": 6.17507e-6,
    "f": 0.999357,
    "b": 0.00141379,
    "g": 0.98831,
    "xr": 2.14606e-4,
    "xs1": 0.0,
    "xs2": 0.0,
}

# CICR timer value at rest, far past the release window
INITIAL_CICR_TIMER = 1000.0

# fast sodium current
DEFAULT_GNA = 16.0

# Na-K pump
INAK_MAX = 1.5
INAK_KM_NAI = 10.0
INAK_KM_KO = 1.5

# slow delayed rectifier
IKS_PR_NAK = 0.01833
IKS_G_BASE = 0.433
IKS_G_SCALE = 0.615

# fast delayed rectifier, inward rectifier, plateau
IKR_G = 0.02614
IK1_G = 0.75
IKP_G = 0.00552

# L-type calcium channel: permeability, activity coefficients in/out
LCA_CA = (5.4e-4, 1.0, 0.341)
LCA_NA = (6.75e-7, 0.75, 0.75)
LCA_K = (1.93e-7, 0.75, 0.75)
LCA_KM_CA = 0.0006

# T-type calcium channel
ICAT_G = 0.05

# Na-Ca exchanger
NACA_SCALE = 2.5e-4
NACA_SAT = 1e-4
NACA_GAMMA = 0.15

# nonspecific calcium-activated current
NSCA_PERMEABILITY = 1.75e-7
NSCA_GAMMA = 0.75
NSCA_KM_CA = 0.0012

# sarcolemmal pump and background currents
IPCA_MAX = 1.15
IPCA_KM = 0.0005
ICAB_G = 0.003016
INAB_G = 0.00141

# SR uptake, leak, translocation
IUP_MAX = 0.00875
IUP_KM = 0.00092
ILEAK_K = 0.005 / 15.0
TAU_TR = 180.0

# myoplasmic buffers (total, Km)
TRPN = (0.07, 0.0005)
CMDN = (0.05, 0.00238)

# JSR buffer (total, Km)
CSQN = (10.0, 0.8)

# CICR release
GREL_MAX = 150.0
RYR_HALF_TIME = 4.0
RYR_SLOPE = 0.5
