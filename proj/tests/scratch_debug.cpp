#include <cstdio>
#include "shtuka/carlitz.hpp"
using namespace shtuka;
int main() {
    for (int p : {2, 3}) {
        std::printf("p=%d\n", p);
        auto fp = FieldParams::make(p);
        auto pp = make_period_params(fp, 32, 40);
        auto cv = log_coeffs(fp, 6);
        std::printf("  log_coeffs ok\n");
        PeriodValue lg = log_eval(pp, 40);
        std::printf("  log_eval ok, %zu terms\n", lg.terms().size());
        long long qn = 1;
        for (int n = 0; qn < 32; ++n, qn *= p) {
            PeriodValue got = PeriodValue::zero(pp);
            for (const auto& [k, c] : lg.terms())
                if (k.first == int(qn)) got = got + PeriodValue::monomial(pp, 0, k.second, c);
            std::printf("  n=%d collect ok (%zu)\n", n, got.terms().size());
            PeriodValue expect = rat_to_laurent(pp, cv[size_t(n)], 40);
            std::printf("  n=%d rat ok, agree=%d\n", n, int(got.agrees_with(expect)));
        }
    }
    return 0;
}
