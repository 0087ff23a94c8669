#pragma once

#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <dkernel/dkernel.hpp>

namespace dktest {

using namespace dk;

// All test randomness flows through a seeded engine so every run sees the same
// instances.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}

    int upto(int n) { return static_cast<int>(gen() % static_cast<unsigned long long>(n + 1)); }
    int range(int lo, int hi) { return lo + upto(hi - lo); }
    Rational coeff(int mag = 5) {
        int c = range(-mag, mag);
        return rat(c == 0 ? 1 : c);
    }
};

// Random polynomial in the given variables: up to `terms` monomials of total
// degree <= deg.  Never zero, so it can serve as a generator or denominator.
inline Poly random_poly(const VarTablePtr& table, const std::vector<int>& vars, int deg,
                        int terms, Rng& rng) {
    Poly p(table);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int budget = rng.upto(deg);
        for (int i = 0; i < budget; ++i)
            m = m * Monomial::var(vars[static_cast<size_t>(rng.upto(static_cast<int>(vars.size()) - 1))]);
        p += Poly::term(table, rng.coeff(), m);
    }
    if (p.is_zero()) p += Poly::constant(table, 1);
    return p;
}

inline std::vector<int> main_var_ids(const AlgebraPtr& a) { return a->main_vars(); }

#ifdef DKERNEL_BIN

struct CliResult {
    int code = -1;
    std::string out;
};

inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(DKERNEL_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CliResult r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string spec_path(const std::string& name) {
    return std::string(DKERNEL_SPEC_DIR) + "/" + name;
}

// elapsed_ms is the one nondeterministic report field
inline std::string strip_elapsed(const std::string& s) {
    std::string out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) nl = s.size();
        std::string line = s.substr(pos, nl - pos);
        if (line.find("elapsed_ms") == std::string::npos) out += line + "\n";
        pos = nl + 1;
    }
    return out;
}

#endif // DKERNEL_BIN

} // namespace dktest
