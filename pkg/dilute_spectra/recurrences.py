"""
Recurrence Data
===============
Auxiliary-function recurrences, their product solutions and the
first-term eigenvalue assemblies for the seven dilute A4 excitations,
with all string phases fixed at b = -1.

Every entry is a list of powers e of x. On the F side a factor e stands
for (-x^e a; nome) and on the G side for (-x^e / a; nome). Ratio factors
and the "s40" solution factors use nome x^40 (= x^{2r}); "s72" factors use
x^72 (= x^{12s}).
"""

from typing import Dict, Optional, Tuple

from pydantic import BaseModel

Powers = Tuple[int, ...]


class RecurrenceSide(BaseModel):
    """One auxiliary function: its recurrence ratio R and its solution."""

    ratio_num: Powers
    ratio_den: Powers
    s40_num: Powers = ()
    s40_den: Powers = ()
    s72_num: Powers = ()
    s72_den: Powers = ()

    class Config:
        frozen = True


class Assembly(BaseModel):
    """First term of Lambda_j / 3 as sign (w/b)^k times x^40 products."""

    sign: int
    k: int
    wb_num: Powers
    bw_num: Powers
    wb_den: Powers
    bw_den: Powers

    class Config:
        frozen = True


class SpectatorSide(BaseModel):
    """
    Spectator phase alpha on one side of the third excitation.

    The auxiliary function carries the prefactor (num; x^40)/(den; x^40)
    evaluated at u/alpha (F) or alpha v (G). The raw function then obeys
    the recurrence with the extra alpha ratio (ratio_num; x^40)/(ratio_den; x^40),
    unsigned.
    """

    prefactor_num: Powers
    prefactor_den: Powers
    ratio_num: Powers
    ratio_den: Powers

    class Config:
        frozen = True


class ExcitationIdentities(BaseModel):
    j: int
    F: RecurrenceSide
    G: RecurrenceSide
    assembly: Assembly
    # unsuppressed N-th power bracket (num, den) of the hole case, unsigned factors
    bracket_F: Optional[Tuple[Powers, Powers]] = None
    bracket_G: Optional[Tuple[Powers, Powers]] = None
    spectator_F: Optional[SpectatorSide] = None
    spectator_G: Optional[SpectatorSide] = None

    class Config:
        frozen = True


IDENTITIES: Dict[int, ExcitationIdentities] = {
    1: ExcitationIdentities(
        j=1,
        F=RecurrenceSide(ratio_num=(24, 28), ratio_den=(12, 16),
                         s40_num=(40,), s40_den=(16,),
                         s72_num=(36, 48), s72_den=(12, 72)),
        G=RecurrenceSide(ratio_num=(36, 40), ratio_den=(48, 52),
                         s40_num=(40,), s40_den=(64,),
                         s72_num=(36, 96), s72_den=(60, 72)),
        assembly=Assembly(sign=-1, k=1, wb_num=(28,), bw_num=(12,), wb_den=(12,), bw_den=(28,)),
        bracket_F=((12,), (28,)),
        bracket_G=((52,), (36,)),
    ),
    2: ExcitationIdentities(
        j=2,
        F=RecurrenceSide(ratio_num=(26, 30), ratio_den=(10, 14),
                         s40_num=(30, 42), s40_den=(14, 26),
                         s72_num=(26, 38, 46, 58), s72_den=(10, 22, 62, 74)),
        G=RecurrenceSide(ratio_num=(38, 34), ratio_den=(50, 54),
                         s40_num=(38, 50), s40_den=(54, 66),
                         s72_num=(34, 46, 86, 98), s72_den=(50, 62, 70, 82)),
        assembly=Assembly(sign=1, k=2, wb_num=(26, 38), bw_num=(2, 14), wb_den=(2, 14), bw_den=(26, 38)),
    ),
    # printed G ratio of the third excitation has numerator and denominator exchanged
    3: ExcitationIdentities(
        j=3,
        F=RecurrenceSide(ratio_num=(32, 36), ratio_den=(4, 8),
                         s40_num=(36,), s40_den=(20,),
                         s72_num=(32, 40, 44, 52), s72_den=(4, 8, 16, 68)),
        G=RecurrenceSide(ratio_num=(28, 32), ratio_den=(56, 60),
                         s40_num=(44,), s40_den=(60,),
                         s72_num=(28, 32, 40, 92), s72_den=(56, 64, 68, 76)),
        assembly=Assembly(sign=1, k=2, wb_num=(32,), bw_num=(8,), wb_den=(8,), bw_den=(32,)),
        spectator_F=SpectatorSide(prefactor_num=(12,), prefactor_den=(4,),
                                  ratio_num=(4, 24, 28), ratio_den=(12, 16, 36)),
        spectator_G=SpectatorSide(prefactor_num=(28,), prefactor_den=(36,),
                                  ratio_num=(36, 40, 60), ratio_den=(28, 48, 52)),
    ),
    4: ExcitationIdentities(
        j=4,
        F=RecurrenceSide(ratio_num=(34, 38), ratio_den=(2, 6),
                         s40_num=(38, 42, 50, 54), s40_den=(2, 6, 14, 18),
                         s72_num=(34, 38, 46, 50), s72_den=(70, 74, 82, 86)),
        G=RecurrenceSide(ratio_num=(30, 26), ratio_den=(58, 62),
                         s40_num=(26, 30, 38, 42), s40_den=(62, 66, 74, 78),
                         s72_num=(94, 98, 106, 110), s72_den=(58, 62, 70, 74)),
        assembly=Assembly(sign=1, k=2, wb_num=(18, 30), bw_num=(10, 22), wb_den=(10, 22), bw_den=(30, 18)),
    ),
    5: ExcitationIdentities(
        j=5,
        F=RecurrenceSide(ratio_num=(24, 28, 28, 32), ratio_den=(8, 12, 12, 16),
                         s40_num=(32, 40, 44), s40_den=(12, 16, 24),
                         s72_num=(28, 36, 40, 44, 48, 56), s72_den=(8, 12, 20, 64, 72, 76)),
        G=RecurrenceSide(ratio_num=(32, 36, 36, 40), ratio_den=(48, 52, 52, 56),
                         s40_num=(40, 36, 48), s40_den=(56, 64, 68),
                         s72_num=(32, 36, 44, 88, 96, 100), s72_den=(52, 60, 64, 68, 72, 80)),
        assembly=Assembly(sign=-1, k=3, wb_num=(24, 28, 36), bw_num=(4, 12, 16),
                          wb_den=(4, 12, 16), bw_den=(24, 28, 36)),
    ),
    6: ExcitationIdentities(
        j=6,
        F=RecurrenceSide(ratio_num=(24, 28, 32, 36), ratio_den=(4, 8, 12, 16),
                         s40_num=(36, 40), s40_den=(16, 20),
                         s72_num=(32, 36, 40, 44, 48, 52), s72_den=(4, 8, 12, 16, 68, 72)),
        G=RecurrenceSide(ratio_num=(28, 32, 36, 40), ratio_den=(48, 52, 56, 60),
                         s40_num=(40, 44), s40_den=(60, 64),
                         s72_num=(28, 32, 36, 40, 92, 96), s72_den=(56, 60, 64, 68, 72, 76)),
        assembly=Assembly(sign=-1, k=3, wb_num=(28, 32), bw_num=(8, 12), wb_den=(8, 12), bw_den=(28, 32)),
    ),
    7: ExcitationIdentities(
        j=7,
        F=RecurrenceSide(ratio_num=(22, 26, 26, 30, 30, 34), ratio_den=(6, 10, 10, 14, 14, 18),
                         s40_num=(34, 38, 42, 46), s40_den=(10, 14, 18, 22),
                         s72_num=(30, 34, 38, 42, 42, 46, 50, 54), s72_den=(6, 10, 14, 18, 66, 70, 74, 78)),
        G=RecurrenceSide(ratio_num=(30, 34, 34, 38, 38, 42), ratio_den=(46, 50, 50, 54, 54, 58),
                         s40_num=(34, 38, 42, 46), s40_den=(58, 62, 66, 70),
                         s72_num=(30, 34, 38, 42, 90, 94, 98, 102), s72_den=(54, 58, 62, 66, 66, 70, 74, 78)),
        assembly=Assembly(sign=1, k=4, wb_num=(22, 26, 30, 34), bw_num=(6, 10, 14, 18),
                          wb_den=(6, 10, 14, 18), bw_den=(22, 26, 30, 34)),
    ),
}


def get_identities(j: int) -> ExcitationIdentities:
    """Recurrence data of excitation j (1..7)."""
    if j not in IDENTITIES:
        raise KeyError(f"No recurrence data for excitation {j}")
    return IDENTITIES[j]
