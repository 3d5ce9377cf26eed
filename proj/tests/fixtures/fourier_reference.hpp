#pragma once
// Generated by tests/oracles/gen_fourier_reference.py (mpmath, 40 digits).
#include <array>

namespace terndio::fixtures {

struct FourierRef {
  double xi;
  double re;
  double im;
};

// Second box weight for alpha2 = 1, k = 3: support [0.025, 0.2], plateau [0.05, 0.15].
inline constexpr std::array<FourierRef, 17> kWeight2Transform = {{
    {1.0, 0.13661138302989412245, -0.014595146389399422866},
    {1.7782794100389228012, 0.13469947035508446541, -0.025803000393897622648},
    {3.162277660168379332, 0.12873854885146439425, -0.045042370736382077369},
    {5.6234132519034908039, 0.11071995542504522932, -0.075498843614534522248},
    {10.0, 0.06147144995027054576, -0.11073721215602863984},
    {17.782794100389228012, -0.033042515378315748888, -0.099683399701854093151},
    {31.62277660168379332, -0.049883669188009339013, 0.010610602312254823128},
    {56.234132519034908039, -0.021321600109972971682, -0.0057272653303378606564},
    {100.0, -0.0015980816075614397428, 0.0090760463102670862114},
    {177.82794100389228012, -0.0020470541578274204478, -0.0024947250045553497624},
    {316.2277660168379332, 0.0010535474366082873143, -0.0010108300694248869198},
    {562.34132519034908039, 0.000076186405469827894902, -0.000093752179526704985181},
    {1000.0, 4.9964389586525336011e-6, -0.000020939988620512617341},
    {1778.2794100389228012, 7.9646338369092758796e-7, 9.0042798080223267955e-7},
    {3162.277660168379332, -1.1763617959357823948e-8, 1.1631772802587961979e-8},
    {5623.4132519034908039, -1.1407180166757881877e-10, -2.7670369724937860081e-10},
    {10000.0, -5.4803087725201870343e-13, -2.4497810422994373827e-13},
}};

// Symmetric bump (plateau [-1, 1], support [-2, 2]); the transform is real.
inline constexpr std::array<FourierRef, 10> kSymmetricTransform = {{
    {50.0, 0.000017578678197910446592, 0.0},
    {100.0, -5.6754089652906331354e-9, 0.0},
    {150.0, -1.6873234298440118289e-9, 0.0},
    {200.0, -1.6829432043789194486e-10, 0.0},
    {250.0, 4.3842119826581737227e-11, 0.0},
    {300.0, -4.3403129152303508379e-12, 0.0},
    {400.0, -3.8629409690725002565e-15, 0.0},
    {600.0, -3.6633515140002730208e-17, 0.0},
    {800.0, 2.9889240150896487452e-20, 0.0},
    {1200.0, 1.8765398844130749355e-25, 0.0},
}};

}  // namespace terndio::fixtures
