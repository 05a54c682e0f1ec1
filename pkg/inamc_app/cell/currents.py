"""
Membrane currents, SR fluxes and gate kinetics of the whole-cell model.

All currents are in uA/uF; SR fluxes (Irel, Iup, Ileak, Itr) in mmol/L/ms.
"""

# future
from __future__ import annotations

# imports
import math
from dataclasses import dataclass
from typing import NamedTuple

# project
from inamc_app.cell import constants as c
from inamc_app.cell.cicr import ryr_close, ryr_open
from inamc_app.cell.state import CellState
from inamc_app.model.constants import STATE_INDEX

O_INDEX = STATE_INDEX["O"]


class GateKinetics(NamedTuple):
    """Steady states and time constants (ms) of the gates at one voltage."""

    dss: float
    taud: float
    fss: float
    tauf: float
    bss: float
    taub: float
    gss: float
    taug: float
    xrss: float
    tauxr: float
    xs1ss: float
    tauxs1: float
    xs2ss: float
    tauxs2: float


@dataclass(frozen=True, slots=True)
class Currents:
    """
    Currents and fluxes at one state, plus the calcium increments of the step.

    Attributes:
        itca: Total calcium current entering the myoplasm.
        itot: Total membrane current; dV/dt = -itot.
        dcai: Total myoplasmic calcium increment over the step, mmol/L.
        dcajsr: JSR calcium increment over the step, mmol/L.
    """

    ina: float
    inak: float
    iks: float
    ikr: float
    ik1: float
    ikp: float
    ical_ca: float
    ical_k: float
    ical_na: float
    icat: float
    inaca: float
    insna: float
    ikns: float
    ipca: float
    icab: float
    inab: float
    ito: float
    irel: float
    iup: float
    ileak: float
    itr: float
    itca: float
    itot: float
    dcai: float
    dcajsr: float

    @property
    def ical(self) -> float:
        return self.ical_ca + self.ical_k + self.ical_na

    @property
    def insca(self) -> float:
        return self.ikns + self.insna

    @property
    def itna(self) -> float:
        """Total sodium current."""
        return (
            self.ina
            + self.inab
            + self.ical_na
            + self.insna
            + 3.0 * self.inak
            + 3.0 * self.inaca
        )

    @property
    def itk(self) -> float:
        """Total potassium current."""
        return (
            self.ikr
            + self.iks
            + self.ik1
            + self.ikp
            + self.ical_k
            + self.ikns
            - 2.0 * self.inak
            + self.ito
        )


def _vtrap(y: float, k: float) -> float:
    """y / (exp(k y) - 1), with its limit 1/k at y = 0."""
    if y == 0.0:
        return 1.0 / k
    return y / math.expm1(k * y)


def ghk_current(
    permeability: float,
    z: int,
    vm: float,
    c_in: float,
    c_out: float,
    gamma_in: float,
    gamma_out: float,
) -> float:
    """
    Goldman-Hodgkin-Katz current
    P z^2 (V F^2 / RT) (g_i C_i e^x - g_o C_o) / (e^x - 1), x = z V F / RT.

    Args:
        permeability: Permeability P.
        z: Ion valence.
        vm: Membrane potential, mV.
        c_in: Intracellular concentration, mmol/L.
        c_out: Extracellular concentration, mmol/L.
        gamma_in: Intracellular activity coefficient.
        gamma_out: Extracellular activity coefficient.

    Returns:
        float: The current, uA/uF.
    """
    x = z * vm * c.F_OVER_RT
    ratio = 1.0 if x == 0.0 else x / math.expm1(x)
    return (
        permeability
        * z
        * c.FARADAY
        * ratio
        * (gamma_in * c_in * math.exp(x) - gamma_out * c_out)
    )


def gate_kinetics(vm: float) -> GateKinetics:
    """
    Steady states and time constants of all gates.

    Args:
        vm: Membrane potential, mV.

    Returns:
        GateKinetics: The kinetics at vm.
    """
    # L-type calcium
    y = vm + 10.0
    dss = 1.0 / (1.0 + math.exp(-y / 6.24))
    if y == 0.0:
        taud = dss / (6.24 * 0.035)
    else:
        taud = dss * (-math.expm1(-y / 6.24)) / (0.035 * y)
    fss = 1.0 / (1.0 + math.exp((vm + 32.0) / 8.0)) + 0.6 / (
        1.0 + math.exp((50.0 - vm) / 20.0)
    )
    tauf = 1.0 / (0.0197 * math.exp(-((0.0337 * y) ** 2)) + 0.02)

    # T-type calcium
    bss = 1.0 / (1.0 + math.exp(-(vm + 14.0) / 10.8))
    gss = 1.0 / (1.0 + math.exp((vm + 60.0) / 5.6))
    taub = 3.7 + 6.1 / (1.0 + math.exp((vm + 25.0) / 4.5))
    taug = -0.875 * vm + 12.0 if vm <= 0.0 else 12.0

    # fast delayed rectifier
    xrss = 1.0 / (1.0 + math.exp(-(vm + 21.5) / 7.5))
    tauxr = 1.0 / (
        0.00138 * -_vtrap(vm + 14.2, -0.123) + 0.00061 * _vtrap(vm + 38.9, 0.145)
    )

    # slow delayed rectifier
    xs1ss = 1.0 / (1.0 + math.exp(-(vm - 1.5) / 16.7))
    tauxs1 = 1.0 / (
        7.19e-5 * -_vtrap(vm + 30.0, -0.148) + 1.31e-4 * _vtrap(vm + 30.0, 0.0687)
    )

    return GateKinetics(
        dss=dss,
        taud=taud,
        fss=fss,
        tauf=tauf,
        bss=bss,
        taub=taub,
        gss=gss,
        taug=taug,
        xrss=xrss,
        tauxr=tauxr,
        xs1ss=xs1ss,
        tauxs1=tauxs1,
        xs2ss=xs1ss,
        tauxs2=4.0 * tauxs1,
    )


def compute_currents(
    s: CellState, dt: float, gna: float = c.DEFAULT_GNA, ito: float = 0.0
) -> Currents:
    """
    Evaluate every current and flux of the model at state s.

    Args:
        s: Cell state.
        dt: Time step, ms; enters only the calcium increments.
        gna: Maximal fast sodium conductance, mS/uF.
        ito: Transient outward current, uA/uF.

    Returns:
        Currents: The currents.
    """
    vm = s.vm
    vfrt = vm * c.F_OVER_RT

    # reversal potentials
    ena = c.RT_OVER_F * math.log(c.NA_OUT / s.nai)
    ek = c.RT_OVER_F * math.log(c.K_OUT / s.ki)
    eks = c.RT_OVER_F * math.log(
        (4.5 + c.IKS_PR_NAK * 150.0) / (s.ki + c.IKS_PR_NAK * c.NA_OUT)
    )
    eca = c.RT_OVER_F / 2.0 * math.log(c.CA_OUT / s.cai)

    # fast sodium
    ina = gna * (vm - ena) * float(s.mc[O_INDEX])

    # Na-K pump
    sigma = math.exp(c.NA_OUT / 67.3) / 7.0 - 1.0
    fnak = 1.0 / (
        1.0 + 0.1245 * math.exp(-0.1 * vfrt) + 0.0365 * sigma * math.exp(-vfrt)
    )
    inak = (
        c.INAK_MAX
        * fnak
        / (1.0 + (c.INAK_KM_NAI / s.nai) ** 1.5)
        * c.K_OUT
        / (c.K_OUT + c.INAK_KM_KO)
    )

    # slow delayed rectifier
    gks = c.IKS_G_BASE * (1.0 + 0.6 / (1.0 + (3.8e-5 / s.cai) ** 1.4)) * c.IKS_G_SCALE
    iks = gks * s.xs1 * s.xs2 * (vm - eks)

    # fast delayed rectifier
    rot = 1.0 / (1.0 + math.exp((vm + 9.0) / 22.4))
    ikr = c.IKR_G * math.sqrt(c.K_OUT / 5.4) * s.xr * rot * (vm - ek)

    # inward rectifier
    ak1 = 1.02 / (1.0 + math.exp(0.2385 * (vm - ek - 59.215)))
    bk1 = (
        0.49124 * math.exp(0.08032 * (vm - ek + 5.476))
        + math.exp(0.06175 * (vm - ek - 594.31))
    ) / (1.0 + math.exp(-0.5143 * (vm - ek + 4.753)))
    ik1 = c.IK1_G * math.sqrt(c.K_OUT / 5.4) * ak1 / (ak1 + bk1) * (vm - ek)

    # plateau potassium
    kp = 1.0 / (1.0 + math.exp((7.488 - vm) / 5.98))
    ikp = c.IKP_G * kp * (vm - ek)

    # L-type calcium
    fca = 1.0 / (1.0 + s.cai / c.LCA_KM_CA)
    gating = s.d * s.f * fca
    ical_ca = gating * ghk_current(c.LCA_CA[0], 2, vm, s.cai, c.CA_OUT, *c.LCA_CA[1:])
    ical_na = gating * ghk_current(c.LCA_NA[0], 1, vm, s.nai, c.NA_OUT, *c.LCA_NA[1:])
    ical_k = gating * ghk_current(c.LCA_K[0], 1, vm, s.ki, c.K_OUT, *c.LCA_K[1:])

    # T-type calcium
    icat = c.ICAT_G * s.b * s.b * s.g * (vm - eca)

    # Na-Ca exchanger
    e_gamma = math.exp((c.NACA_GAMMA - 1.0) * vfrt)
    e_full = math.exp(vfrt)
    na_in = e_full * s.nai**3 * c.CA_OUT
    na_out = c.NA_OUT**3 * s.cai
    inaca = (
        c.NACA_SCALE
        * e_gamma
        * (na_in - na_out)
        / (1.0 + c.NACA_SAT * e_gamma * (na_in + na_out))
    )

    # nonspecific calcium-activated
    activation = 1.0 / (1.0 + (c.NSCA_KM_CA / s.cai) ** 3)
    ikns = activation * ghk_current(
        c.NSCA_PERMEABILITY, 1, vm, s.ki, c.K_OUT, c.NSCA_GAMMA, c.NSCA_GAMMA
    )
    insna = activation * ghk_current(
        c.NSCA_PERMEABILITY, 1, vm, s.nai, c.NA_OUT, c.NSCA_GAMMA, c.NSCA_GAMMA
    )

    # sarcolemmal pump and background
    ipca = c.IPCA_MAX * s.cai / (c.IPCA_KM + s.cai)
    icab = c.ICAB_G * (vm - eca)
    inab = c.INAB_G * (vm - ena)

    # SR fluxes
    itca = ical_ca + icab + ipca - 2.0 * inaca + icat
    grel = c.GREL_MAX / (1.0 + math.exp(itca + 5.0) / 0.9)
    irel = grel * ryr_open(s.tc) * ryr_close(s.tc) * (s.cajsr - s.cai)
    iup = c.IUP_MAX * s.cai / (s.cai + c.IUP_KM)
    ileak = c.ILEAK_K * s.cansr
    itr = (s.cansr - s.cajsr) / c.TAU_TR

    # potassium, sodium and calcium carrying currents
    itk = ikr + iks + ik1 + ikp + ical_k + ikns - 2.0 * inak + ito
    itna = ina + inab + ical_na + insna + 3.0 * inak + 3.0 * inaca
    itot = itk + itna + ical_ca + icab + ipca - 2.0 * inaca + icat

    dcai = -dt * (
        itca * c.A_CAP / (c.V_MYO * 2.0 * c.FARADAY)
        + (iup - ileak) * c.V_NSR / c.V_MYO
        - irel * c.V_JSR / c.V_MYO
    )
    dcajsr = dt * (itr - irel)

    return Currents(
        ina=ina,
        inak=inak,
        iks=iks,
        ikr=ikr,
        ik1=ik1,
        ikp=ikp,
        ical_ca=ical_ca,
        ical_k=ical_k,
        ical_na=ical_na,
        icat=icat,
        inaca=inaca,
        insna=insna,
        ikns=ikns,
        ipca=ipca,
        icab=icab,
        inab=inab,
        ito=ito,
        irel=irel,
        iup=iup,
        ileak=ileak,
        itr=itr,
        itca=itca,
        itot=itot,
        dcai=dcai,
        dcajsr=dcajsr,
    )
