#include "smblab/enumeration.hpp"

namespace smblab {

CylinderList enumerate_cylinders(const ProcessSpec& spec, int n, uint64_t budget) {
    CylinderList list;
    list.order = n;
    for_each_cylinder(spec, n, budget, [&](std::span<const Symbol> w, double log_mu) {
        list.words.emplace_back(std::vector<Symbol>(w.begin(), w.end()));
        list.log_mu.push_back(log_mu);
    });
    return list;
}

}  // namespace smblab
