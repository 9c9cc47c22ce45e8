// Generated by tests/oracles/generate.py; do not edit.
#pragma once

namespace oracle {

struct ErfPoint { double x, y, re, im; };
inline constexpr ErfPoint kErf[] = {
    {0.3, 0.0, 0.32862675945912741619, 0.0},
    {0.5, 1.0, 0.44323864644941128375, 0.37685602386164791724},
    {2.0, 3.0, -0.0025705597540129624053, 0.0010721002459207644596},
    {0.0, 4.0, 0.0, 0.14595358990015278327},
    {1.2, -0.7, 0.6532864159185335006, -0.07366425852173233745},
    {4.0, 25.0, -2.357490239188250583e-9, 8.6046281443838061723e-10},
    {0.05, 30.0, 0.0026797915418459664892, -0.018577491481523552664},
};  // erf(x+iy) e^{-y^2}

struct GaussPoint { double lambda0, sigma, duration, delta, re, im; };
inline constexpr GaussPoint kGauss[] = {
    {1, 0.1767766952966368811, 1, 0, 0.44104069538121083998, 0.0},
    {1, 0.1767766952966368811, 1, 7, -0.19435974301414136917, -0.072804368758012092413},
    {1, 0.1767766952966368811, 1, 40, 0.00024134584304136058501, 0.00053992949410312668889},
    {2.5, 0.10000000000000000555, 1, 13, 0.26288258462989773376, 0.057907039761967156987},
    {0.7, 0.80000000000000004441, 3, 2.2, -0.11487227266708700522, -0.018350357082610948792},
    {1, 0.050000000000000002776, 1, 150, 7.0492251091976105791e-14, -2.9656157045817338994e-14},
};

inline constexpr double kNormalisedLambda0 = 2.2673644642602789478;
inline constexpr double kAxyXi1 = 0.11543068609752215546;
inline constexpr double kAxyXi2 = 0.32628359172328235764;

inline constexpr double kOmega1Khz = 441.91158332248312019;
inline constexpr double kAPerp1Khz = 16.911632754301523326;
inline constexpr double kAPar1Khz = 27.59016291433243183;
inline constexpr double kOmega2Khz = 437.54404138582838417;
inline constexpr double kAPerp2Khz = 54.261397631052872977;
inline constexpr double kAPar2Khz = 20.408809168321572016;

}  // namespace oracle
