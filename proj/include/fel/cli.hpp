#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fel {

// Exit codes: 0 success (equivalent, valid, model found), 1 negative verdict
// (not equivalent, counterexample, no model, no preimage), 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fel
