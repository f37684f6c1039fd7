#ifndef COORDCYCLE_CLI_HPP_
#define COORDCYCLE_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace coordcycle {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitDivergenceOnly = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

int run_cli(int argc, char **argv);

}  // namespace coordcycle

#endif  // COORDCYCLE_CLI_HPP_
