#include "impsel/guards.hpp"

#include <sstream>
#include <vector>

namespace impsel {

namespace {

struct Field {
    const char* key;
    long long Guards::*ll = nullptr;
    int Guards::*i = nullptr;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        {"max_partition_assignments", &Guards::max_partition_assignments, nullptr},
        {"max_permutation_n", nullptr, &Guards::max_permutation_n},
        {"max_enum_all_n", nullptr, &Guards::max_enum_all_n},
        {"max_enum_no_abstention_n", nullptr, &Guards::max_enum_no_abstention_n},
        {"max_enum_outdegree_one_n", nullptr, &Guards::max_enum_outdegree_one_n},
        {"max_symmetrize_n", nullptr, &Guards::max_symmetrize_n},
        {"max_impartiality_exhaustive_n", nullptr, &Guards::max_impartiality_exhaustive_n},
        {"max_compositions", &Guards::max_compositions, nullptr},
    };
    return f;
}

}  // namespace

void Guards::apply_overrides(const std::string& overrides) {
    std::istringstream is(overrides);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("guard override needs key=value: '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        long long parsed;
        try {
            std::size_t used = 0;
            parsed = std::stoll(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("guard override value not an integer: '" + item + "'");
        }
        if (parsed < 1) throw std::invalid_argument("guard override must be positive: '" + item + "'");
        bool matched = false;
        for (const auto& f : fields()) {
            if (key != f.key) continue;
            if (f.ll) this->*(f.ll) = parsed;
            else this->*(f.i) = static_cast<int>(parsed);
            matched = true;
            break;
        }
        if (!matched) throw std::invalid_argument("unknown guard key: '" + key + "'");
    }
}

std::string Guards::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : fields()) {
        if (!first) os << ",";
        first = false;
        os << f.key << "=";
        if (f.ll) os << this->*(f.ll);
        else os << this->*(f.i);
    }
    return os.str();
}

}  // namespace impsel
