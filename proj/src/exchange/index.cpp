#include "twinmarket/exchange/index.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/common/rng.hpp"

namespace twinmarket::exchange {

void IndexSpec::validate() const {
    if (constituents.empty()) throw InvalidSpec("index " + index_id + " has no constituents");
    if (!(base_value > 0.0)) throw InvalidSpec("index " + index_id + " base value must be positive");
    double sum = 0.0;
    for (const auto& c : constituents) {
        if (!(c.base_price > 0.0)) throw InvalidSpec("non-positive base price for " + c.stock_id);
        if (c.weight < 0.0) throw InvalidSpec("negative weight for " + c.stock_id);
        sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidSpec("weights of " + index_id + " do not sum to 1");
}

double compute_index(const IndexSpec& spec, const std::map<std::string, double>& prices) {
    double rel = 0.0;
    for (const auto& c : spec.constituents) {
        auto it = prices.find(c.stock_id);
        if (it == prices.end()) throw MissingConstituent(c.stock_id + " in " + spec.index_id);
        rel += c.weight * (it->second / c.base_price);
    }
    return spec.base_value * rel;
}

std::map<std::string, double> implied_prices(const IndexSpec& spec, double index_value) {
    std::map<std::string, double> out;
    const double ratio = index_value / spec.base_value;
    for (const auto& c : spec.constituents) out[c.stock_id] = c.base_price * ratio;
    return out;
}

void FundamentalBase::validate() const {
    if (!(bvps0 > 0.0)) throw InvalidSpec("bvps0 must be positive for " + stock_id);
    if (!(sps0 > 0.0)) throw InvalidSpec("sps0 must be positive for " + stock_id);
}

Valuation adjust_fundamentals(const FundamentalBase& base, double sim_price) {
    Valuation v;
    if (base.eps0 > 0.0) v.pe = sim_price / base.eps0;
    v.pb = sim_price / base.bvps0;
    v.ps = sim_price / base.sps0;
    v.dv = base.dps0 / sim_price;
    return v;
}

Valuation index_valuation(const IndexSpec& spec, const std::map<std::string, FundamentalBase>& fundamentals,
                          double index_value) {
    Valuation out;
    double pe_sum = 0.0;
    double pe_weight = 0.0;
    const auto prices = implied_prices(spec, index_value);
    for (const auto& c : spec.constituents) {
        auto it = fundamentals.find(c.stock_id);
        if (it == fundamentals.end()) throw MissingConstituent("fundamentals for " + c.stock_id);
        const Valuation v = adjust_fundamentals(it->second, prices.at(c.stock_id));
        out.pb += c.weight * v.pb;
        out.ps += c.weight * v.ps;
        out.dv += c.weight * v.dv;
        if (v.pe) {
            pe_sum += c.weight * *v.pe;
            pe_weight += c.weight;
        }
    }
    if (pe_weight > 0.0) out.pe = pe_sum / pe_weight;
    return out;
}

const IndexSpec& Universe::index(const AssetId& id) const {
    for (const auto& spec : indices) {
        if (spec.index_id == id) return spec;
    }
    throw MissingData("unknown index " + id);
}

std::vector<AssetId> Universe::asset_ids() const {
    std::vector<AssetId> ids;
    for (const auto& spec : indices) ids.push_back(spec.index_id);
    return ids;
}

void Universe::validate() const {
    if (indices.empty()) throw InvalidSpec("universe has no indices");
    for (const auto& spec : indices) {
        spec.validate();
        for (const auto& c : spec.constituents) {
            auto it = fundamentals.find(c.stock_id);
            if (it == fundamentals.end()) throw MissingConstituent("fundamentals for " + c.stock_id);
            it->second.validate();
        }
    }
}

const std::vector<AssetId>& industry_codes() {
    static const std::vector<AssetId> codes = {"TLEI", "MEI",  "CPEI", "IEEI", "REEI",
                                               "TSEI", "CGEI", "TTEI", "EREI", "FSEI"};
    return codes;
}

Universe default_universe(std::uint64_t seed, double base_value) {
    static const int member_counts[] = {2, 8, 3, 3, 1, 1, 5, 10, 6, 11};
    Universe u;
    SeedTree seeds(seed);
    Rng rng = seeds.stream("universe");
    std::lognormal_distribution<double> cap(0.0, 0.8);
    int serial = 0;
    for (std::size_t k = 0; k < industry_codes().size(); ++k) {
        IndexSpec spec;
        spec.index_id = industry_codes()[k];
        spec.base_value = base_value;
        std::vector<double> caps;
        for (int j = 0; j < member_counts[k]; ++j) caps.push_back(cap(rng));
        double total = 0.0;
        for (double c : caps) total += c;
        double assigned = 0.0;
        for (int j = 0; j < member_counts[k]; ++j) {
            Constituent c;
            char buf[16];
            std::snprintf(buf, sizeof buf, "S%03d", ++serial);
            c.stock_id = buf;
            c.base_price = std::round((5.0 + 95.0 * uniform01(rng)) * 100.0) / 100.0;
            c.weight = (j + 1 == member_counts[k]) ? 1.0 - assigned : caps[static_cast<std::size_t>(j)] / total;
            assigned += c.weight;
            spec.constituents.push_back(c);

            FundamentalBase f;
            f.stock_id = c.stock_id;
            const double pb = 0.6 + 4.0 * uniform01(rng);
            const double pe = 6.0 + 30.0 * uniform01(rng);
            f.bvps0 = c.base_price / pb;
            f.eps0 = uniform01(rng) < 0.08 ? -c.base_price / 50.0 : c.base_price / pe;
            f.sps0 = c.base_price / (0.5 + 5.0 * uniform01(rng));
            f.dps0 = c.base_price * 0.04 * uniform01(rng);
            u.fundamentals[f.stock_id] = f;
        }
        u.indices.push_back(std::move(spec));
    }
    return u;
}

}  // namespace twinmarket::exchange
