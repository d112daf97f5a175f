/*
 * Copyright 2026 The bidgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "bidgame/graph.hpp"

namespace bidgame {

/// k ad slots; reward maps each bit string s_1..s_k to a rational.
struct AuctionSpec {
    std::size_t slots = 1;
    std::map<std::string, Rational> reward;
};

inline std::string auction_vertex_id(std::size_t slot, const std::string& bits, std::size_t slots)
{
    std::string l = std::to_string(slot);
    std::string pad(std::to_string(slots).size() - l.size(), '0');
    return "s" + pad + l + "_" + bits;
}

/// A_{k,rho}: vertex <l, s> (slot l is auctioned next, s the current
/// allocation) moves to <l+1 mod k, s[l:=1]> on a Max win and to
/// <l+1 mod k, s[l:=0]> otherwise.
inline GameGraph build_auction_game(const AuctionSpec& spec)
{
    const std::size_t k = spec.slots;
    if (k < 1 || k > 16) throw Error(ErrorKind::InvalidArgument, "auction needs 1 <= slots <= 16");
    GameDescription d;
    const std::size_t states = std::size_t{1} << k;
    for (std::size_t mask = 0; mask < states; ++mask) {
        std::string bits(k, '0');
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) bits[i] = '1';
        auto it = spec.reward.find(bits);
        if (it == spec.reward.end()) throw Error(ErrorKind::RewardMissing, "state " + bits);
        for (std::size_t l = 1; l <= k; ++l) {
            std::string id = auction_vertex_id(l, bits, k);
            d.vertices.push_back({id, it->second, std::nullopt});
            std::size_t next = l % k + 1;
            for (char b : {'1', '0'}) {
                std::string s = bits;
                s[l - 1] = b;
                d.edges.emplace_back(id, auction_vertex_id(next, s, k));
            }
        }
    }
    return GameGraph(d);
}

} // namespace bidgame
