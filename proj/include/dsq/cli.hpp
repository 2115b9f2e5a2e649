#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace dsq::cli {

// One CLI invocation; args excludes the program name.  Data goes to `out`,
// diagnostics to `err`; `in` feeds the stream mode of `verify`.
// Exit status: 0 success, 1 negative verdict on well-formed input, 2 usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dsq::cli
