"""Every contraction edge of the catalog, with its prefactors and signs.

Signs are recorded per edge so that the limit reproduces the target basis or
tensor exactly; the engine never searches over them.  Scales are written
``Scale(sign, c_order, l_order)`` for ``sign * (c_r/c)**c_order * (l_r/l)**l_order``.
"""

from __future__ import annotations

from ..contraction import UNIT, ContractionRecipe, Scale

__all__ = ["ALGEBRA_RECIPES", "GEOMETRY_RECIPES", "RECIPES", "recipe_by_label"]


def _algebra(source, rule, target, time=UNIT, translation=UNIT, boost=UNIT, pre=None, note=""):
    return ContractionRecipe(
        "algebra", source, rule, target, time=time, translation=translation, boost=boost, pre_involution=pre, note=note
    )


def _geometry(source, rule, target, g=UNIT, h=UNIT, note=""):
    return ContractionRecipe("geometry", source, rule, target, g_scale=g, h_scale=h, note=note)


def _blocked(source, rule, implied=False, note=""):
    return ContractionRecipe("geometry", source, rule, None, expected="blocked", implied=implied, note=note)


# scales that recur
SHRINK_L = Scale(1, 0, 2)  # (l_r/l)^2
SHRINK_L_NEG = Scale(-1, 0, 2)
SHRINK_C = Scale(1, 2, 0)  # (c_r/c)^2
SHRINK_C_NEG = Scale(-1, 2, 0)
GROW_C = Scale(1, -2, 0)  # (c/c_r)^2
GROW_C_NEG = Scale(-1, -2, 0)
NU_RATIO = Scale(1, -2, 2)  # (nu/nu_r)^2
NU_RATIO_NEG = Scale(-1, -2, 2)
NEG = Scale(-1)


ALGEBRA_RECIPES = (
    # Poincare and its second version
    _algebra("d_+", "l_to_inf", "p"),
    _algebra("d_-", "l_to_inf", "p"),
    _algebra("d_+", "l_to_zero", "p_2", time=SHRINK_L, translation=SHRINK_L),
    _algebra("d_-", "l_to_zero", "p_2", time=SHRINK_L_NEG, translation=SHRINK_L_NEG),
    # Euclid and its second version
    _algebra("r", "l_to_inf", "e"),
    _algebra("l", "l_to_inf", "e"),
    _algebra("r", "l_to_zero", "e_2", time=SHRINK_L, translation=SHRINK_L),
    _algebra("l", "l_to_zero", "e_2", time=SHRINK_L_NEG, translation=SHRINK_L_NEG),
    # Newton-Hooke
    _algebra("d_+", "nu_fixed_inf", "n_+"),
    _algebra("l", "nu_fixed_inf", "n_+"),
    _algebra("d_+", "nu_fixed_zero", "n_+2", translation=SHRINK_L, boost=SHRINK_C),
    _algebra("l", "nu_fixed_zero", "n_+2", translation=SHRINK_L_NEG, boost=SHRINK_C_NEG),
    _algebra("d_-", "nu_fixed_inf", "n_-"),
    _algebra("r", "nu_fixed_inf", "n_-"),
    _algebra("d_-", "nu_fixed_zero", "n_-2", time=NEG, translation=SHRINK_L_NEG, boost=SHRINK_C),
    _algebra("r", "nu_fixed_zero", "n_-2", time=NEG, translation=SHRINK_L, boost=SHRINK_C_NEG),
    # Hooke-Newton and its second versions
    _algebra("d_+", "c_to_zero", "h_+", boost=SHRINK_C),
    _algebra("d_-", "c_to_zero", "h_-", boost=SHRINK_C),
    _algebra("d_+", "c_to_inf", "e'", time=GROW_C),
    _algebra("d_-", "c_to_inf", "p'", time=GROW_C),
    _algebra("r", "c_to_zero", "h_+", time=NEG, boost=SHRINK_C, pre="theta"),
    _algebra("l", "c_to_zero", "h_-", time=NEG, boost=SHRINK_C, pre="theta"),
    _algebra("r", "c_to_inf", "e'", time=GROW_C, boost=NEG, pre="theta"),
    _algebra("l", "c_to_inf", "p'", time=GROW_C, boost=NEG, pre="theta"),
    # Galilei
    _algebra("d_+", "cc_over_l_fixed_inf", "g"),
    _algebra("d_-", "cc_over_l_fixed_inf", "g"),
    _algebra("r", "cc_over_l_fixed_inf", "g"),
    _algebra("l", "cc_over_l_fixed_inf", "g"),
    _algebra("e", "c_to_inf", "g"),
    _algebra("p", "c_to_inf", "g"),
    _algebra("n_+", "l_to_inf", "g"),
    _algebra("n_-", "l_to_inf", "g"),
    # Carroll
    _algebra("d_+", "nu_zero_l_inf", "c", boost=SHRINK_C),
    _algebra("d_-", "nu_zero_l_inf", "c", boost=SHRINK_C),
    _algebra("h_+", "l_to_inf", "c"),
    _algebra("h_-", "l_to_inf", "c"),
    _algebra("p", "c_to_zero", "c", boost=SHRINK_C),
    _algebra("e", "c_to_zero", "c", time=NEG, boost=SHRINK_C, pre="theta"),
    # Galilei, second version
    _algebra("d_+", "cc_over_l_fixed_zero", "g_2", time=NU_RATIO, translation=SHRINK_L, boost=SHRINK_C),
    _algebra("d_-", "cc_over_l_fixed_zero", "g_2", time=NU_RATIO_NEG, translation=SHRINK_L_NEG, boost=SHRINK_C),
    _algebra("r", "cc_over_l_fixed_zero", "g_2", time=NU_RATIO, translation=SHRINK_L, boost=SHRINK_C, pre="theta"),
    _algebra("l", "cc_over_l_fixed_zero", "g_2", time=NU_RATIO, translation=SHRINK_L, boost=SHRINK_C, pre="pi"),
    _algebra("p_2", "c_to_zero", "g_2", time=GROW_C, boost=SHRINK_C),
    _algebra("n_+2", "l_to_zero", "g_2", time=SHRINK_L, translation=SHRINK_L),
    _algebra("n_-2", "l_to_zero", "g_2", time=SHRINK_L, translation=SHRINK_L),
    # Carroll, second version
    _algebra("d_+", "nu_inf_l_zero", "c_2", time=NU_RATIO, translation=SHRINK_L),
    _algebra("d_-", "nu_inf_l_zero", "c_2", time=NU_RATIO_NEG, translation=SHRINK_L_NEG),
    _algebra("e'", "l_to_zero", "c_2", time=SHRINK_L, translation=SHRINK_L),
    _algebra("p'", "l_to_zero", "c_2", time=SHRINK_L_NEG, translation=SHRINK_L_NEG),
    _algebra("p_2", "c_to_inf", "c_2", time=GROW_C),
    _algebra("e_2", "c_to_inf", "c_2", time=GROW_C_NEG),
    # para-Galilei
    _algebra("d_+", "c_over_ll_fixed_inf", "g'", time=NU_RATIO),
    _algebra("l", "c_over_ll_fixed_inf", "g'", time=NU_RATIO),
    _algebra("d_-", "c_over_ll_fixed_inf", "g'", time=NU_RATIO_NEG),
    _algebra("r", "c_over_ll_fixed_inf", "g'", time=NU_RATIO_NEG),
    _algebra("n_+", "l_to_zero", "g'", time=SHRINK_L),
    _algebra("n_-", "l_to_zero", "g'", time=SHRINK_L_NEG),
    _algebra("e'", "l_to_inf", "g'", time=SHRINK_L),
    _algebra("p'", "l_to_inf", "g'", time=SHRINK_L_NEG, translation=NEG, boost=NEG, pre="pi"),
    # para-Galilei, second version
    _algebra("d_+", "c_over_ll_fixed_zero", "g'_2", translation=SHRINK_L, boost=SHRINK_C),
    _algebra("l", "c_over_ll_fixed_zero", "g'_2", translation=SHRINK_L, boost=SHRINK_C, pre="pi"),
    _algebra("d_-", "c_over_ll_fixed_zero", "g'_2", time=NEG, translation=SHRINK_L, boost=SHRINK_C, pre="thetapi"),
    _algebra("r", "c_over_ll_fixed_zero", "g'_2", time=NEG, translation=SHRINK_L, boost=SHRINK_C, pre="theta"),
    _algebra("n_+2", "c_to_zero", "g'_2", boost=SHRINK_C),
    _algebra("n_-2", "c_to_zero", "g'_2", time=NEG, boost=SHRINK_C),
    _algebra("h_+", "l_to_zero", "g'_2", translation=SHRINK_L),
    _algebra("h_-", "l_to_zero", "g'_2", translation=SHRINK_L, boost=NEG, pre="pi"),
)


G_SHRINK_L = Scale(1, 0, -2)  # l^2 / l_r^2 on g
H_SHRINK_L = Scale(1, 0, 4)  # l_r^4 / l^4 on h
G_NU = Scale(1, -2, 0)  # c^2 / c_r^2 on g
H_C = Scale(1, 2, 0)  # c_r^2 / c^2 on h
G_C_INF = Scale(1, 2, 0)
H_C_INF = Scale(1, -2, 0)

GEOMETRY_RECIPES = (
    # large radius, Riemannian and Lorentzian
    _geometry("Riem", "l_to_inf", "Euc"),
    _geometry("Lob", "l_to_inf", "Euc"),
    _blocked("LBdS", "l_to_inf"),
    _geometry("dS", "l_to_inf", "Min"),
    _geometry("AdS", "l_to_inf", "Min"),
    _blocked("BdSL", "l_to_inf"),
    _blocked("DTdS", "l_to_inf"),
    # small radius
    _geometry("Riem", "l_to_zero", "E_2", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("LBdS", "l_to_zero", "E_2-", g=G_SHRINK_L, h=H_SHRINK_L),
    _blocked("Lob", "l_to_zero"),
    _geometry("dS", "l_to_zero", "P_2+", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("AdS", "l_to_zero", "P_2-", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("BdSL", "l_to_zero", "EP_2-", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("DTdS", "l_to_zero", "DTP_2+", g=G_SHRINK_L, h=H_SHRINK_L),
    # Newton-Hooke
    _geometry("dS", "nu_fixed_inf", "NH_+", g=G_NU),
    _geometry("AdS", "nu_fixed_inf", "NH_-", g=G_NU),
    _geometry("Lob", "nu_fixed_inf", "ENH_+", g=G_NU),
    _geometry("Riem", "nu_fixed_inf", "ENH_-", g=G_NU),
    _geometry("LBdS", "nu_fixed_inf", "NH_+'", g=G_NU),
    _geometry("BdSL", "nu_fixed_inf", "ENH_+'", g=G_NU),
    _blocked("DTdS", "nu_fixed_inf"),
    _geometry("dS", "nu_fixed_zero", "NH_2", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("LBdS", "nu_fixed_zero", "NH_2'", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("Riem", "nu_fixed_zero", "ENH_2", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("DTdS", "nu_fixed_zero", "DTNH_2", g=G_SHRINK_L, h=H_SHRINK_L),
    _blocked("AdS", "nu_fixed_zero", implied=True),
    _blocked("Lob", "nu_fixed_zero", implied=True),
    _blocked("BdSL", "nu_fixed_zero", implied=True),
    # Hooke-Newton
    _geometry("dS", "c_to_zero", "HN_+", h=H_C),
    _geometry("AdS", "c_to_zero", "HN_-", h=H_C),
    _geometry("Riem", "c_to_zero", "EHN_+", h=H_C),
    _geometry("Lob", "c_to_zero", "EHN_-", h=H_C),
    _geometry("LBdS", "c_to_zero", "HN_-'", h=H_C),
    _geometry("DTdS", "c_to_zero", "DTHN", h=H_C),
    _blocked("BdSL", "c_to_zero"),
    _geometry("Riem", "c_to_inf", "E'", g=G_C_INF, h=H_C_INF),
    _geometry("AdS", "c_to_inf", "P'", g=G_C_INF, h=H_C_INF),
    _geometry("LBdS", "c_to_inf", "P'", g=G_C_INF.flipped(), h=H_C_INF.flipped()),
    _geometry("BdSL", "c_to_inf", "E'", g=G_C_INF, h=H_C_INF),
    _blocked("dS", "c_to_inf", implied=True),
    _blocked("Lob", "c_to_inf", implied=True),
    _blocked("DTdS", "c_to_inf", implied=True),
    # Galilei and Carroll
    _geometry("Min", "c_to_inf", "G", g=G_NU),
    _geometry("Min", "c_to_zero", "C", h=H_C),
    _geometry("dS", "cc_over_l_fixed_inf", "G", g=G_NU),
    _geometry("AdS", "cc_over_l_fixed_inf", "G", g=G_NU),
    _geometry("Riem", "cc_over_l_fixed_inf", "EG", g=G_NU),
    _geometry("Lob", "cc_over_l_fixed_inf", "EG", g=G_NU),
    _blocked("LBdS", "cc_over_l_fixed_inf"),
    _blocked("BdSL", "cc_over_l_fixed_inf"),
    _blocked("DTdS", "cc_over_l_fixed_inf"),
    _geometry("dS", "nu_zero_l_inf", "C", h=H_C),
    _geometry("AdS", "nu_zero_l_inf", "C", h=H_C),
    _geometry("Riem", "nu_zero_l_inf", "EC", h=H_C),
    _geometry("Lob", "nu_zero_l_inf", "EC", h=H_C),
    _blocked("LBdS", "nu_zero_l_inf"),
    _blocked("BdSL", "nu_zero_l_inf"),
    _blocked("DTdS", "nu_zero_l_inf"),
    # Galilei and Carroll, second versions
    _geometry("dS", "cc_over_l_fixed_zero", "EG_2", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("Riem", "cc_over_l_fixed_zero", "EG_2", g=G_SHRINK_L.flipped(), h=H_SHRINK_L.flipped()),
    _geometry("LBdS", "cc_over_l_fixed_zero", "G_2", g=G_SHRINK_L, h=H_SHRINK_L),
    _geometry("DTdS", "cc_over_l_fixed_zero", "G_2", g=G_SHRINK_L.flipped(), h=H_SHRINK_L.flipped()),
    _blocked("Lob", "cc_over_l_fixed_zero"),
    _blocked("AdS", "cc_over_l_fixed_zero"),
    _blocked("BdSL", "cc_over_l_fixed_zero"),
    _geometry("P_2+", "c_to_zero", "EG_2"),
    _blocked("P_2-", "c_to_zero"),
    _geometry("P_2-", "c_to_inf", "C_2", g=G_C_INF, h=H_C_INF),
    _geometry("AdS", "nu_inf_l_zero", "C_2", g=Scale(1, 2, -2), h=Scale(1, -2, 4)),
    _geometry("LBdS", "nu_inf_l_zero", "C_2", g=Scale(-1, 2, -2), h=Scale(-1, -2, 4)),
    _geometry("Riem", "nu_inf_l_zero", "EC_2", g=Scale(1, 2, -2), h=Scale(1, -2, 4)),
    _geometry("BdSL", "nu_inf_l_zero", "EC_2", g=Scale(1, 2, -2), h=Scale(1, -2, 4)),
    _blocked("Lob", "nu_inf_l_zero"),
    _blocked("DTdS", "nu_inf_l_zero"),
    _blocked("dS", "nu_inf_l_zero"),
    # para-Galilei
    _geometry("Riem", "c_over_ll_fixed_inf", "EG'", h=Scale(1, -2, 2)),
    _geometry("BdSL", "c_over_ll_fixed_inf", "EG'", h=Scale(1, -2, 2)),
    _geometry("LBdS", "c_over_ll_fixed_inf", "G'", h=Scale(1, -2, 2)),
    _geometry("AdS", "c_over_ll_fixed_inf", "G'", g=NEG, h=Scale(-1, -2, 2)),
    _blocked("dS", "c_over_ll_fixed_inf"),
    _blocked("DTdS", "c_over_ll_fixed_inf"),
    _blocked("Lob", "c_over_ll_fixed_inf"),
    _geometry("P'", "l_to_inf", "G'", g=Scale(-1, 0, -4), h=Scale(-1, 0, 2)),
    _geometry("Riem", "c_over_ll_fixed_zero", "EG_2'", g=G_SHRINK_L, h=Scale(1, 2, 2)),
    _geometry("LBdS", "c_over_ll_fixed_zero", "EG_2'", g=G_SHRINK_L, h=Scale(1, 2, 2)),
    _geometry("dS", "c_over_ll_fixed_zero", "G_2'", g=G_SHRINK_L, h=Scale(1, 2, 2)),
    _geometry("DTdS", "c_over_ll_fixed_zero", "G_2'", g=G_SHRINK_L, h=Scale(1, 2, 2)),
    _blocked("BdSL", "c_over_ll_fixed_zero"),
    _blocked("AdS", "c_over_ll_fixed_zero"),
    _blocked("Lob", "c_over_ll_fixed_zero"),
)

RECIPES = ALGEBRA_RECIPES + GEOMETRY_RECIPES


def recipe_by_label(label: str) -> ContractionRecipe:
    for recipe in RECIPES:
        if recipe.label == label:
            return recipe
    raise KeyError(label)
