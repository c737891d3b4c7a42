// Copyright 2026 The qmeasure developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file prediction.hpp
 * From measure to prediction: an event of small measure, singled out in
 * advance, rarely occurs. Repeated identical trials are modeled by
 * tensor powers of the decoherence matrix; frequency-deviation events
 * give the finite-n form of "the relative frequency does not track p".
 *
 * Declaring events in advance is structural here: cournot_report only
 * evaluates events handed to it, and there is deliberately no API that
 * scans for small-measure events after the fact.
 */
#ifndef QMEASURE_PREDICTION_HPP
#define QMEASURE_PREDICTION_HPP

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/limits.hpp"
#include "qmeasure/quantum_measure.hpp"

namespace qmeasure {

/// The theoretician's knobs, fixed before any measure is evaluated.
struct PredictionConfig {
    double epsilon_cournot;
    /// What was singled out, recorded ahead of evaluation. Required.
    std::string declared_in_advance;

    PredictionConfig(double epsilon, std::string declared)
        : epsilon_cournot(epsilon), declared_in_advance(std::move(declared)) {
        if (!(epsilon_cournot > 0.0) || !(epsilon_cournot < 1.0)) {
            throw DomainError("cournot epsilon must lie strictly inside "
                              "(0, 1)");
        }
        if (declared_in_advance.empty()) {
            throw DomainError("the tested event must be described in advance");
        }
    }
};

/// n identical copies of a base space. Histories are n-tuples, the first
/// copy varying fastest; labels concatenate copy labels with the first
/// copy rightmost, matching the time-ordered reading of system labels.
class ProductSpace {
  public:
    static ProductSpace make(const SampleSpace &base, std::size_t copies,
                             std::size_t cap = limits::kElementScan) {
        if (copies < 1) {
            throw DomainError("a product space needs at least one copy");
        }
        std::size_t total = 1;
        for (std::size_t k = 0; k < copies; ++k) {
            if (total > cap / base.size()) {
                throw CapacityError("product space of " +
                                    std::to_string(base.size()) + "^" +
                                    std::to_string(copies) +
                                    " histories exceeds the cap of " +
                                    std::to_string(cap));
            }
            total *= base.size();
        }
        std::vector<std::string> labels;
        labels.reserve(total);
        for (std::size_t t = 0; t < total; ++t) {
            std::string label;
            std::size_t rest = t;
            std::vector<std::size_t> digits(copies);
            for (std::size_t k = 0; k < copies; ++k) {
                digits[k] = rest % base.size();
                rest /= base.size();
            }
            for (std::size_t k = copies; k-- > 0;) {
                label += base.label(digits[k]);
            }
            labels.push_back(std::move(label));
        }
        return ProductSpace(base, copies, SampleSpace(std::move(labels)));
    }

    const SampleSpace &base() const noexcept { return base_; }
    std::size_t copies() const noexcept { return copies_; }
    const SampleSpace &product() const noexcept { return product_; }
    std::size_t size() const noexcept { return product_.size(); }

    /// Base-space index of copy k inside tuple t.
    std::size_t component(std::size_t tuple, std::size_t k) const {
        for (std::size_t i = 0; i < k; ++i) {
            tuple /= base_.size();
        }
        return tuple % base_.size();
    }

  private:
    ProductSpace(SampleSpace base, std::size_t copies, SampleSpace product)
        : base_(std::move(base)), copies_(copies), product_(std::move(product)) {}

    SampleSpace base_;
    std::size_t copies_;
    SampleSpace product_;
};

/// mu(A) <= epsilon: predicted to rarely occur (weak reading). The
/// config must already carry the event's declaration.
inline bool approximately_precluded(const DecoherenceMatrix &d, const Event &a,
                                    const PredictionConfig &config) {
    return measure(d, a) <= config.epsilon_cournot;
}

/// D_n((h_1..h_n),(h'_1..h'_n)) = prod_k D(h_k, h'_k) over the given
/// product space. Within the dense cap the matrix materializes.
inline DecoherenceMatrix product_system(const DecoherenceMatrix &d,
                                        const ProductSpace &ps) {
    detail::require_same_space(d.space(), ps.base(), "product_system");
    if (ps.copies() == 1) {
        return d;
    }
    return DecoherenceMatrix::product(
        std::make_shared<DecoherenceMatrix>(d), ps.copies(), ps.product());
}

inline DecoherenceMatrix product_system(const DecoherenceMatrix &d,
                                        std::size_t copies,
                                        std::size_t cap = limits::kElementScan) {
    return product_system(d, ProductSpace::make(d.space(), copies, cap));
}

/// All n-tuples whose relative frequency of landing in `base_event`
/// deviates from p by more than delta.
inline Event frequency_deviation_event(const ProductSpace &ps,
                                       const Event &base_event, double p,
                                       double delta) {
    detail::require_same_space(ps.base(), base_event.space(),
                               "frequency_deviation_event");
    if (p < 0.0 || p > 1.0) {
        throw DomainError("target frequency p must lie in [0, 1]");
    }
    if (!(delta > 0.0)) {
        throw DomainError("deviation delta must be positive");
    }
    const std::size_t n = ps.copies();
    const std::size_t base = ps.base().size();
    boost::dynamic_bitset<> bits(ps.size());
    for (std::size_t t = 0; t < ps.size(); ++t) {
        std::size_t rest = t;
        std::size_t count = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (base_event.contains(rest % base)) {
                ++count;
            }
            rest /= base;
        }
        const double freq = static_cast<double>(count) / static_cast<double>(n);
        if (std::abs(freq - p) > delta) {
            bits.set(t);
        }
    }
    return Event(ps.product(), std::move(bits));
}

struct CournotEntry {
    std::string name;
    Event event;
    double mu;
    bool approximately_precluded;
};

struct CournotReport {
    double epsilon;
    std::size_t declared_count;
    std::vector<CournotEntry> entries;
    /// Prediction-level statement only: small-measure verdicts do not
    /// shrink the set of potential realities, and epsilon is a declared
    /// choice echoed here rather than hidden.
    std::string note;
};

inline CournotReport
cournot_report(const DecoherenceMatrix &d,
               const std::vector<std::pair<std::string, Event>> &declared,
               const PredictionConfig &config) {
    CournotReport report;
    report.epsilon = config.epsilon_cournot;
    report.declared_count = declared.size();
    report.note =
        "verdicts are prediction-level at the declared epsilon; the set of "
        "potential realities is unaffected";
    for (const auto &[name, event] : declared) {
        const double mu = measure(d, event);
        report.entries.push_back(
            {name, event, mu, mu <= config.epsilon_cournot});
    }
    return report;
}

} // namespace qmeasure

#endif // QMEASURE_PREDICTION_HPP
