#include <algorithm>
#include <stdexcept>

#include "linzip/instance_io.hpp"
#include "linzip/random.hpp"

namespace linzip {

SetSystem generate_synthetic(const SyntheticParams& params) {
    if (params.sets == 0) throw std::invalid_argument("synthetic instance needs at least one set");
    if (params.elements < params.sets) throw std::invalid_argument("synthetic instance needs elements >= sets");
    if (!(params.density >= 0.0 && params.density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");

    Rng rng(derive_seed(params.seed, "synthetic"));
    std::size_t fresh_left = params.elements;
    std::vector<std::size_t> used;  // element ids placed so far, ascending
    std::vector<SetSystem::RawSet> sets;
    sets.reserve(params.sets);

    for (std::size_t i = 0; i < params.sets; ++i) {
        const std::size_t size = 1 + uniform_below(rng, 6);
        // One fresh element stays reserved for every later set, so density 0 never runs dry.
        const std::size_t reserve = params.sets - i - 1;
        std::vector<std::size_t> mine;
        for (std::size_t slot = 0; slot < size; ++slot) {
            std::vector<std::size_t> reusable;
            for (auto e : used) {
                if (std::find(mine.begin(), mine.end(), e) == mine.end()) reusable.push_back(e);
            }
            const bool can_fresh = fresh_left > reserve;
            bool reuse = !reusable.empty() && unit_double(rng) < params.density;
            if (!reuse && !can_fresh) reuse = !reusable.empty() && params.density > 0.0;
            if (reuse) {
                mine.push_back(reusable[uniform_below(rng, reusable.size())]);
            } else if (can_fresh) {
                mine.push_back(params.elements - fresh_left);
                --fresh_left;
            } else {
                break;
            }
        }
        if (mine.empty()) {
            // Only reachable with density in (0,1) and nothing reusable; the reserve covers it.
            mine.push_back(params.elements - fresh_left);
            --fresh_left;
        }
        std::sort(mine.begin(), mine.end());
        SetSystem::RawSet raw{"P" + std::to_string(i + 1), {}};
        for (auto e : mine) raw.members.push_back("a" + std::to_string(e + 1));
        for (auto e : mine) {
            auto it = std::lower_bound(used.begin(), used.end(), e);
            if (it == used.end() || *it != e) used.insert(it, e);
        }
        sets.push_back(std::move(raw));
    }

    std::vector<std::string> elements;
    elements.reserve(used.size());
    for (auto e : used) elements.push_back("a" + std::to_string(e + 1));
    return SetSystem::create(std::move(elements), sets);
}

}  // namespace linzip
