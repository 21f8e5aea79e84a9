#include "rpolar/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rpolar {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string level_to_hex(const std::vector<std::uint8_t>& bits) {
    static const char* digits = "0123456789abcdef";
    const std::size_t chars = (bits.size() + 3) / 4;
    std::string s(chars, '0');
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j]) {
            const std::size_t c = j / 4;
            s[c] = digits[(s[c] <= '9' ? s[c] - '0' : s[c] - 'a' + 10) | (8 >> (j % 4))];
        }
    }
    return s;
}

std::vector<std::uint8_t> hex_to_level(const std::string& s, std::size_t nbits) {
    std::vector<std::uint8_t> bits(nbits, 0);
    for (std::size_t j = 0; j < nbits; ++j) {
        const char c = s.at(j / 4);
        const int v = c <= '9' ? c - '0' : (c | 0x20) - 'a' + 10;
        bits[j] = (v >> (3 - j % 4)) & 1;
    }
    return bits;
}

}  // namespace

RelaxationMap RelaxationMap::all_zeros(int n) {
    RelaxationMap m;
    m.n_ = n;
    m.levels_.resize(n + 1);
    for (int t = 0; t <= n; ++t) m.levels_[t].assign(std::size_t{1} << t, 0);
    return m;
}

bool RelaxationMap::heredity_ok() const {
    for (int t = 0; t < n_; ++t) {
        for (std::size_t j = 0; j < levels_[t].size(); ++j) {
            if (levels_[t][j] && !(levels_[t + 1][2 * j] && levels_[t + 1][2 * j + 1]))
                return false;
        }
    }
    return true;
}

std::string RelaxationMap::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    auto arr = nlohmann::ordered_json::array();
    for (int t = 0; t <= n_; ++t) arr.push_back(level_to_hex(levels_[t]));
    j["levels"] = std::move(arr);
    return j.dump();
}

RelaxationMap RelaxationMap::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    RelaxationMap m;
    m.n_ = j.at("n").get<int>();
    const auto& arr = j.at("levels");
    if (static_cast<int>(arr.size()) != m.n_ + 1)
        throw std::invalid_argument("RelaxationMap: levels count mismatch");
    m.levels_.resize(m.n_ + 1);
    for (int t = 0; t <= m.n_; ++t)
        m.levels_[t] = hex_to_level(arr[t].get<std::string>(), std::size_t{1} << t);
    return m;
}

std::vector<std::uint8_t> CodeSpec::info_mask() const {
    std::vector<std::uint8_t> mask(block_length(), 0);
    for (auto i : good_set) mask[i] = 1;
    return mask;
}

std::string CodeSpec::to_json(const std::string& map_ref) const {
    nlohmann::ordered_json j;
    j["n"] = n;
    auto arr = nlohmann::ordered_json::array();
    for (auto i : good_set) arr.push_back(i + 1);  // 1-based on disk
    j["good_set"] = std::move(arr);
    if (crc) {
        j["crc"] = {{"width", crc->width}, {"poly", crc->poly}, {"init", crc->init}};
    } else {
        j["crc"] = nullptr;
    }
    j["map_ref"] = map_ref;
    return j.dump();
}

CodeSpec CodeSpec::from_json(const std::string& text, const std::string& map_json) {
    auto j = nlohmann::json::parse(text);
    CodeSpec spec;
    spec.n = j.at("n").get<int>();
    for (const auto& v : j.at("good_set"))
        spec.good_set.push_back(v.get<std::uint32_t>() - 1);
    if (!j.at("crc").is_null()) {
        const auto& c = j.at("crc");
        spec.crc = CrcConfig{c.at("width").get<int>(), c.at("poly").get<std::uint64_t>(),
                             c.at("init").get<std::uint64_t>()};
    }
    spec.map = RelaxationMap::from_json(map_json);
    if (spec.map.depth() != spec.n)
        throw std::invalid_argument("CodeSpec: map depth mismatch");
    return spec;
}

std::string save_code_files(const CodeSpec& spec, const std::string& base) {
    const std::string map_path = base + ".map.json";
    const std::string code_path = base + ".code.json";
    write_file(map_path, spec.map.to_json());
    write_file(code_path, spec.to_json(map_path));
    return code_path;
}

CodeSpec load_code_files(const std::string& code_path) {
    const std::string text = read_file(code_path);
    auto j = nlohmann::json::parse(text);
    std::string map_ref = j.at("map_ref").get<std::string>();
    namespace fs = std::filesystem;
    if (!fs::exists(map_ref)) {
        const auto sibling = fs::path(code_path).parent_path() / fs::path(map_ref).filename();
        if (fs::exists(sibling)) map_ref = sibling.string();
    }
    return CodeSpec::from_json(text, read_file(map_ref));
}

namespace {

// Ascending EP, ties broken toward the larger bit index.
std::vector<std::uint32_t> ep_order(const std::vector<double>& ep) {
    std::vector<std::uint32_t> order(ep.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (ep[a] != ep[b]) return ep[a] < ep[b];
        return a > b;
    });
    return order;
}

void select_good(Construction& c, Target target) {
    const auto order = ep_order(c.leaf_ep);
    c.spec.good_set.clear();
    c.selected_ep_sum = 0.0;
    if (target.kind == Target::Kind::Rate) {
        const auto k = static_cast<std::size_t>(
            std::llround(target.value * static_cast<double>(c.leaf_ep.size())));
        for (std::size_t i = 0; i < k && i < order.size(); ++i) {
            c.spec.good_set.push_back(order[i]);
            c.selected_ep_sum += c.leaf_ep[order[i]];
        }
    } else {
        double acc = 0.0;
        for (auto idx : order) {
            if (acc + c.leaf_ep[idx] > target.value) break;
            acc += c.leaf_ep[idx];
            c.spec.good_set.push_back(idx);
        }
        c.selected_ep_sum = acc;
        c.fer_unreachable = c.spec.good_set.empty();
    }
    std::sort(c.spec.good_set.begin(), c.spec.good_set.end());
}

}  // namespace

Construction construct_fp(const ReliabilityTree& tree, Target target) {
    Construction c;
    const int n = tree.depth();
    c.spec.n = n;
    c.spec.map = RelaxationMap::all_zeros(n);
    c.leaf_ep.reserve(tree.leaves().size());
    for (const auto& nd : tree.leaves()) c.leaf_ep.push_back(nd.e_hi);
    select_good(c, target);
    return c;
}

Construction construct_relaxed(const ReliabilityTree& tree, Scenario scenario,
                               const Thresholds& th, Target target) {
    if (scenario != Scenario::Gc && scenario != Scenario::Bc && scenario != Scenario::Ac)
        throw std::invalid_argument("construct_relaxed: scenario must be Gc, Bc or Ac");
    if (th.eg >= th.eb) throw std::invalid_argument("construct_relaxed: eg >= eb");
    const int n = tree.depth();
    const bool bec = tree.kind() == TreeKind::BecExact;
    const bool gc_on = scenario != Scenario::Bc;
    const bool bc_on = scenario != Scenario::Gc;
    // BEC triggers run in the (z, zc) domain so the GC/BC pair mirrors exactly:
    // z < Tg and zc < 1 - Tb, with Tb = 1 - Tg these are the same comparison
    // against Tg on the two tracked values.
    const double tg_z = 2.0 * th.eg;
    const double tbc_z = 1.0 - 2.0 * th.eb;

    auto triggers = [&](int t, const NodeFig& nd) {
        if (gc_on && (bec ? nd.z < tg_z : nd.e_hi < th.eg)) return true;
        if (bc_on && (bec ? nd.zc < tbc_z : nd.e_lo > th.eb)) {
            // No-rate-loss guard: the most upgraded descendant must stay
            // useless, its EP lower bound iterates as e -> 2 e^2.
            if (bec) {
                double zcf = nd.zc;
                for (int k = t; k < n; ++k) zcf = 2.0 * zcf - zcf * zcf;
                return 1.0 - zcf > tg_z;
            }
            double ef = nd.e_lo;
            for (int k = t; k < n; ++k) ef = 2.0 * ef * ef;
            return ef > th.eg;
        }
        return false;
    };

    Construction c;
    c.spec.n = n;
    c.spec.map = RelaxationMap::all_zeros(n);
    std::vector<std::vector<double>> adj(n + 1);
    adj[0] = {tree.node(0, 0).e_hi};
    if (triggers(0, tree.node(0, 0))) c.spec.map.set_relaxed(0, 0, true);
    for (int t = 1; t <= n; ++t) {
        const auto& lvl = tree.level(t);
        adj[t].resize(lvl.size());
        for (std::size_t j = 0; j < lvl.size(); ++j) {
            if (c.spec.map.relaxed(t - 1, j / 2)) {
                c.spec.map.set_relaxed(t, j, true);
                adj[t][j] = adj[t - 1][j / 2];
            } else {
                adj[t][j] = lvl[j].e_hi;
                if (triggers(t, lvl[j])) c.spec.map.set_relaxed(t, j, true);
            }
        }
    }
    c.leaf_ep = std::move(adj[n]);
    select_good(c, target);
    return c;
}

Construction construct_mrp(const Construction& fp, const ReliabilityTree& tree,
                           Scenario scenario) {
    if (scenario != Scenario::GcMrp && scenario != Scenario::AcMrp)
        throw std::invalid_argument("construct_mrp: scenario must be GcMrp or AcMrp");
    const int n = tree.depth();
    const bool relax_rate0 = scenario == Scenario::AcMrp;
    const auto info = fp.spec.info_mask();

    std::vector<std::vector<std::uint8_t>> all_info(n + 1), all_frozen(n + 1);
    all_info[n].resize(info.size());
    all_frozen[n].resize(info.size());
    for (std::size_t j = 0; j < info.size(); ++j) {
        all_info[n][j] = info[j];
        all_frozen[n][j] = !info[j];
    }
    for (int t = n - 1; t >= 0; --t) {
        all_info[t].resize(std::size_t{1} << t);
        all_frozen[t].resize(std::size_t{1} << t);
        for (std::size_t j = 0; j < all_info[t].size(); ++j) {
            all_info[t][j] = all_info[t + 1][2 * j] && all_info[t + 1][2 * j + 1];
            all_frozen[t][j] = all_frozen[t + 1][2 * j] && all_frozen[t + 1][2 * j + 1];
        }
    }

    Construction c;
    c.spec = fp.spec;  // good set fixed
    c.spec.map = RelaxationMap::all_zeros(n);
    std::vector<std::vector<double>> adj(n + 1);
    adj[0] = {tree.node(0, 0).e_hi};
    for (int t = 0; t <= n; ++t) {
        if (t > 0) {
            adj[t].resize(std::size_t{1} << t);
            for (std::size_t j = 0; j < adj[t].size(); ++j)
                adj[t][j] = c.spec.map.relaxed(t - 1, j / 2) ? adj[t - 1][j / 2]
                                                             : tree.node(t, j).e_hi;
        }
        for (std::size_t j = 0; j < all_info[t].size(); ++j) {
            if (all_info[t][j] || (relax_rate0 && all_frozen[t][j]))
                c.spec.map.set_relaxed(t, j, true);
        }
    }
    c.leaf_ep = adj[n];
    c.selected_ep_sum = 0.0;
    for (auto i : c.spec.good_set) c.selected_ep_sum += c.leaf_ep[i];
    return c;
}

}  // namespace rpolar
