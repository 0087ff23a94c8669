#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <dkernel/dkernel.hpp>

namespace {

const char* usage = R"(usage: dkernel <command> --spec FILE [flags]

commands:
  prolong                   prolonged ring (and section) of the spec's variety
  check d-subvariety        direct and oracle D-subvariety checks for --ideal
  check d-point             constant-D-point check at --at "x = 1, y = 0"
  check d-group             product rule for the [section] data
  check twisted             a-twisted product rule; needs --a
  check coderivation        a-coderivation check; needs --a
  check hopf-axioms         coassociativity, counit, antipode
  magic                     fit c in a*dd(a) - 3/2*(d(a))^2 = c*(a^2 - a^4); needs --a
  pi                        build the morphism onto (E, t_c); needs --a
  ore mul                   left-normal-form product of --p and --q
  ore inner                 inner sigma-derivation witness (probe element --f)
  ore shape                 classify the [ore] coproduct_x line
  dme delta-ideal           is --ideal a delta-ideal
  dme sigma-delta-ideal     is --ideal preserved by sigma and delta
  dme locally-closed        --p against the remaining candidates
  dme rationality           quotient-rule witness; --p --num --den
  dme primitivity           maximality below --m "gens"; --p

flags:
  --spec FILE      spec file (required)
  --a EXPR         group-like element for twisted/coderivation/magic/pi
  --c NAME         parameter the fitted magic constant must equal
  --json           JSON report
  --pretty         aligned human-readable report
  --max-degree N   Groebner degree cap (default 40)

exit codes: 0 verdict true (or pure computation), 1 verdict false, 2 error.
)";

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> words;
    dk::Flags flags;
    bool json = false;
    bool pretty = false;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--json") {
            json = true;
        } else if (arg == "--pretty") {
            pretty = true;
        } else if (arg == "--help" || arg == "-h") {
            std::cout << usage;
            return 0;
        } else if (arg.rfind("--", 0) == 0) {
            if (i + 1 >= argc) {
                std::cerr << "error: flag " << arg << " needs a value\n";
                return 2;
            }
            flags[arg.substr(2)] = argv[++i];
        } else {
            words.push_back(arg);
        }
    }
    if (words.empty()) {
        std::cerr << usage;
        return 2;
    }

    try {
        auto it = flags.find("spec");
        if (it == flags.end()) throw dk::DomainError("missing --spec");
        std::ifstream in(it->second);
        if (!in) throw dk::DomainError("cannot open '" + it->second + "'");
        std::stringstream buf;
        buf << in.rdbuf();

        dk::GroebnerOptions opts;
        if (flags.count("max-degree")) opts.max_degree = std::stoi(flags.at("max-degree"));

        auto t0 = std::chrono::steady_clock::now();
        dk::BuiltSpec spec(dk::parse_spec(buf.str()), opts);
        dk::Report rep = dk::run_command(spec, words, flags);
        auto t1 = std::chrono::steady_clock::now();
        rep.set("elapsed_ms", static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()));

        std::cout << (json ? rep.json() : pretty ? rep.pretty() : rep.plain());
        return rep.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
