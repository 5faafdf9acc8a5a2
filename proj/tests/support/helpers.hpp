#pragma once

#include <initializer_list>
#include <vector>

#include "vcx/family.hpp"
#include "vcx/subset.hpp"

namespace testing {

inline vcx::Subset S(int n, std::initializer_list<int> elems) { return vcx::Subset::of(n, elems); }

inline vcx::UniformFamily F(int n, int k, std::initializer_list<std::initializer_list<int>> members) {
    std::vector<vcx::Subset> out;
    for (const auto& m : members) out.push_back(vcx::Subset::of(n, m));
    return vcx::UniformFamily(n, k, std::move(out));
}

}  // namespace testing
