// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <iostream>
#include <string>
#include <vector>
namespace necklace {
inline int dispatch(const std::vector<std::string>&, std::ostream&, std::ostream& err) {
    err << "not yet implemented\n";
    return 1;
}
}  // namespace necklace
