#ifndef SCMN_MANIFEST_HPP
#define SCMN_MANIFEST_HPP

#include <iosfwd>
#include <string>

namespace scmn {

// A fully-specified run: command plus every knob it reads. Serializable so
// a run can be reproduced exactly; identical manifests produce identical
// outputs (all computations are deterministic for fixed parameters).
struct RunManifest {
    std::string command;        // sir | sir-limit | de | sc-de | bp-threshold |
                                // potential-curve | potential-threshold |
                                // energy-gap | rate | verify
    std::string channel = "bec";  // builtin name or config path
    int dl = 4;
    int dr = 2;
    int dg = 2;
    int L = 1;
    int w = 1;
    double eps = 0.0;
    double rate = 0.5;
    int grid = 1024;
    double tol = 1e-10;
    double tol_eps = 1e-6;
    int max_iter = 50000;
    std::string output;         // empty = stdout summary only
    std::string format = "csv";  // csv | svg | json

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

// Exit codes used by run and the CLI wrapper.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoSolution = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitVerifyFailed = 5;

// Dispatches the manifest to the library, prints the one-line summary (or
// the verify table) to out, writes any requested files, and returns an
// exit code. Exceptions are mapped to the nonzero codes above.
int run(const RunManifest& m, std::ostream& out);

}  // namespace scmn

#endif
