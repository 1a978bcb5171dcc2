"""Chebyshev coefficients (on p in [0,1]) for the Riemann-Siegel
correction terms C0..C4.  Generated by tools/gen_rs_cheb.py; do not
edit by hand."""

import numpy as np
from numpy.polynomial import chebyshev as _cheb

N_CORRECTIONS = 5

COEFFS = (
    np.array([
        0.6426672862397684,
        8.50802870020078e-62,
        0.27197299999785507,
        -5.266874909648102e-62,
        0.010738605819340285,
        2.3498364981506914e-62,
        -0.0013743815296336614,
        2.0662355414773322e-61,
        -0.00012468221880320676,
        1.5395480505125221e-61,
        -5.764599706783048e-07,
        -2.6739518772059593e-62,
        2.728067429580452e-07,
        2.1148528483356224e-61,
        8.07795305950047e-09,
        -5.218257602789811e-61,
        -2.0884608068869654e-10,
        2.836009566733593e-62,
        -1.3115561854739528e-11,
        9.31831714783895e-62,
        -1.4207987228087186e-14,
        3.792149934946633e-61,
        1.0271701357931162e-14,
        5.104817220120468e-62,
        1.3974598819518373e-16,
        3.8974874331395955e-61,
        -4.4841187339522885e-18,
        -3.938001855521504e-61,
        -1.1830599573845289e-19,
    ]),
    np.array([
        7.694504530236808e-57,
        0.010697913921003001,
        -7.547145764346741e-57,
        0.017170651243377882,
        -7.981255268017492e-57,
        0.002793211149788471,
        1.5365835823731724e-56,
        -3.6375653719275045e-05,
        -7.090480590338769e-57,
        -2.7108955231150888e-05,
        -8.391629169442175e-57,
        -1.0483749866752774e-06,
        1.5297519290564734e-56,
        5.886467166527572e-08,
        -6.61312510596458e-57,
        4.322967268502779e-09,
        -8.777908308266376e-57,
        -1.1369591588273712e-11,
        1.5185766941303932e-56,
        -6.6998339103553274e-12,
        -6.117217561151435e-57,
        -1.0079997652808475e-13,
        -9.13978958596765e-57,
        5.152488009222117e-15,
        1.503217233478917e-56,
        1.521695447183697e-16,
        -5.604712903386832e-57,
        -1.8619464833687103e-18,
        -9.476723272477302e-57,
        -1.1301846184246265e-19,
    ]),
    np.array([
        0.0031461158539889122,
        7.569105365417968e-51,
        -0.0023087838845307503,
        -1.4823589744166773e-50,
        5.769820766689844e-05,
        6.63140819274817e-51,
        0.000352388620236659,
        8.488563101202076e-51,
        2.5246667458684434e-05,
        -1.4787879537205808e-50,
        -3.442821197193136e-06,
        5.677762514106545e-51,
        -3.535074556622459e-07,
        9.38753491000666e-51,
        3.730830183792625e-09,
        -1.4716545737594718e-50,
        1.2776951864116635e-09,
        4.710496973560016e-51,
        2.1874616204147057e-11,
        1.0263825295450217e-50,
        -1.914141096461037e-12,
        -1.4609761318317855e-50,
        -6.562883102168523e-14,
        3.7319712506163056e-51,
        1.2586009182411715e-15,
        1.111529598407784e-50,
        8.140076623881463e-17,
    ]),
    np.array([
        4.4112494995976776e-44,
        7.123256221203874e-05,
        -4.325755704005461e-44,
        0.00023234305298164808,
        -4.578671038147157e-44,
        -0.00012929912045472474,
        8.8118704551976955e-44,
        1.807449641367144e-05,
        -4.062417781258153e-44,
        6.5261851872204395e-06,
        -4.820554519791248e-44,
        -1.1696365378521986e-07,
        8.780010462310732e-44,
        -7.349476126518126e-08,
        -3.7892916767181537e-44,
        -1.7750910077907072e-09,
        -5.050823495498112e-44,
        2.555552961326525e-10,
        8.726995875190398e-44,
        1.13766366005373e-11,
        -3.5070354111327567e-44,
        -3.349863898530277e-13,
        -5.268923324798075e-44,
        -2.5537379354163893e-14,
        8.65295457624096e-44,
        6.766500771321871e-17,
        -3.2163290324806407e-44,
        2.976888471991973e-17,
        -5.474328714328295e-44,
        2.9952208087566915e-19,
    ]),
    np.array([
        0.0001676574524669686,
        2.4526990106377288e-37,
        -0.00022728768943416726,
        -4.806755133896627e-37,
        6.477387188445696e-05,
        2.1587665234344835e-37,
        -8.49220050012541e-06,
        2.740722728850386e-37,
        -2.6161407245219076e-06,
        -4.795175238848375e-37,
        8.336764968733215e-07,
        1.8596333870516474e-37,
        6.324704037544833e-08,
        3.0221437930594146e-37,
        -1.0059949403001072e-08,
        -4.772043345765569e-37,
        -7.822677204130333e-10,
        1.5560202499375676e-37,
        3.16765828534986e-11,
        3.2962842249157985e-37,
        3.5006944702052894e-12,
        -4.737415181467789e-37,
        -1.4314814511443748e-14,
        1.2486585528386238e-37,
        -7.269402707921764e-15,
        3.5624835862729488e-37,
        -8.780556594835957e-17,
        -4.691374168326862e-37,
        8.15025447495458e-18,
        9.382887664696384e-38,
        1.920839705822086e-19,
    ]),
)


def eval_correction(k, p):
    """C_k at p (scalar or ndarray), p in [0, 1]."""
    u = 2.0 * np.asarray(p, dtype=float) - 1.0
    out = _cheb.chebval(u, COEFFS[k])
    return out if out.ndim else float(out)
