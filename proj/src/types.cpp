#include "wlanopt/types.hpp"

#include <numeric>

namespace wlanopt {

ActionProfile ActionProfile::from_rows(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw std::invalid_argument("ActionProfile: empty");
    const std::size_t cols = rows[0].size();
    for (const auto& row : rows) {
        if (row.size() != cols || cols < 1)
            throw std::invalid_argument("ActionProfile: ragged rows");
        double sum = 0.0;
        for (double p : row) {
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("ActionProfile: entry outside [0,1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTol)
            throw std::invalid_argument("ActionProfile: not row-stochastic");
    }
    return ActionProfile{std::move(rows)};
}

double ActionProfile::in_prob(int k) const {
    double s = 0.0;
    for (std::size_t l = 1; l < pi[k].size(); ++l) s += pi[k][l];
    return s;
}

int Randomization::row_total(int k) const {
    return std::accumulate(n[k].begin(), n[k].end(), 0);
}

int SystemState::online_total() const {
    int m = 0;
    for (const auto& row : x)
        for (std::size_t l = 1; l < row.size(); ++l) m += row[l];
    return m;
}

std::vector<int> pricing_state(const SystemState& state) {
    std::vector<int> v(state.num_plans(), 0);
    for (const auto& row : state.x)
        for (std::size_t l = 0; l < row.size(); ++l) v[l] += row[l];
    return v;
}

NEType NEType::parse(const std::string& label) {
    std::vector<Stance> t;
    t.reserve(label.size());
    for (char c : label) {
        switch (c) {
            case 'i': t.push_back(Stance::In); break;
            case 'o': t.push_back(Stance::Out); break;
            case 'm': t.push_back(Stance::Mixed); break;
            case '(': case ')': case ',': case ' ': break;
            default: throw std::invalid_argument("NEType: bad stance character");
        }
    }
    if (t.empty()) throw std::invalid_argument("NEType: empty label");
    return NEType{std::move(t)};
}

std::string NEType::label() const {
    std::string s;
    for (Stance st : t)
        s += (st == Stance::In ? 'i' : st == Stance::Out ? 'o' : 'm');
    return s;
}

std::string NEType::pretty() const {
    std::string s = "(";
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) s += ',';
        s += (t[k] == Stance::In ? 'i' : t[k] == Stance::Out ? 'o' : 'm');
    }
    return s + ")";
}

NEType classify_profile(const ActionProfile& profile, double tol) {
    std::vector<Stance> t;
    for (int k = 0; k < profile.num_types(); ++k) {
        const double in = profile.in_prob(k);
        t.push_back(in <= tol        ? Stance::Out
                    : in >= 1.0 - tol ? Stance::In
                                      : Stance::Mixed);
    }
    return NEType{std::move(t)};
}

namespace {

void check_finite(double v, const char* what, std::vector<std::string>& out) {
    if (!std::isfinite(v)) out.push_back(std::string(what) + " not finite");
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> errs;
    if (s.types.empty()) errs.push_back("scenario has no user types");
    for (std::size_t k = 0; k < s.types.size(); ++k) {
        const auto& t = s.types[k];
        const std::string tag = "type " + std::to_string(k + 1) + ": ";
        if (!(t.alpha > 0.0)) errs.push_back(tag + "alpha must be > 0");
        if (!(t.beta > 0.0)) errs.push_back(tag + "beta must be > 0");
        if (!(t.lambda > 0.0)) errs.push_back(tag + "lambda must be > 0");
        if (!(t.mu > 0.0)) errs.push_back(tag + "mu must be > 0");
        if (t.count < 0) errs.push_back(tag + "count must be >= 0");
        check_finite(t.alpha, (tag + "alpha").c_str(), errs);
        check_finite(t.beta, (tag + "beta").c_str(), errs);
    }
    if (!(s.delta_t > 0.0)) errs.push_back("delta_t must be > 0");
    if (!(s.c0 >= 0.0)) errs.push_back("c0 must be >= 0");
    if (s.protocol.is_csma() && !(s.protocol.p > 0.0 && s.protocol.p < 1.0))
        errs.push_back("CSMA p out of range");
    if (s.admission.caps) {
        for (std::size_t l = 1; l < s.admission.caps->size(); ++l)
            if ((*s.admission.caps)[l] < 0)
                errs.push_back("admission cap for plan " + std::to_string(l) + " is negative");
    }
    return errs;
}

std::vector<std::string> validate_profile(const ActionProfile& profile, const Scenario& s) {
    std::vector<std::string> errs;
    if (profile.num_types() != s.num_types()) {
        errs.push_back("profile row count != number of user types");
        return errs;
    }
    for (int k = 0; k < profile.num_types(); ++k) {
        double sum = 0.0;
        for (double p : profile.pi[k]) {
            if (!(p >= 0.0 && p <= 1.0)) {
                errs.push_back("profile row " + std::to_string(k + 1) + " entry outside [0,1]");
                break;
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTol)
            errs.push_back("profile row " + std::to_string(k + 1) + " not row-stochastic");
    }
    return errs;
}

std::vector<std::string> validate_randomization(const Randomization& n, const Scenario& s) {
    std::vector<std::string> errs;
    if (n.num_types() != s.num_types()) {
        errs.push_back("randomization row count != number of user types");
        return errs;
    }
    for (int k = 0; k < n.num_types(); ++k) {
        for (int c : n.n[k])
            if (c < 0) errs.push_back("randomization row " + std::to_string(k + 1) + " has negative count");
        if (n.row_total(k) != s.types[k].count)
            errs.push_back("randomization row " + std::to_string(k + 1) +
                           " does not sum to the type population");
    }
    return errs;
}

}  // namespace wlanopt
