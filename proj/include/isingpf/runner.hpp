#pragma once

#include <string>
#include <vector>

#include "isingpf/config.hpp"

namespace isingpf {

// Process exit codes shared by the runner and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericDomain = 3;
inline constexpr int kExitNumericFailure = 4;

struct RunArtifacts {
    int exit_code = kExitOk;
    std::string diagnostic;          // non-empty when exit_code != 0
    std::vector<std::string> files;  // paths written, metadata sidecar last
};

// Executes the configured experiment and writes its tables plus a
// deterministic JSON metadata sidecar into out_dir.  Output is staged under
// temporary names and renamed only after every file has been produced, so a
// failed run leaves nothing behind.
RunArtifacts run(const RunConfig& cfg, const std::string& out_dir);

}  // namespace isingpf
