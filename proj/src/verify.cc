// Copyright 2026 The Retrodiction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fmt/format.h>

#include <cmath>
#include <functional>

#include "retro/classical.h"
#include "retro/errors.h"
#include "retro/random.h"
#include "retro/scenarios.h"

namespace retro::scenarios {

namespace {

// Accumulates the worst deviation of a property over its cases.
struct Tally {
    double worst = 0;
    std::size_t cases = 0;
    void add(double deviation) {
        worst = std::max(worst, deviation);
        ++cases;
    }
};

PropertyResult run(const std::string &name, double tol, const std::function<Tally()> &body) {
    PropertyResult r{name, false, 0, tol, 0, ""};
    try {
        const auto t = body();
        r.worst = t.worst;
        r.cases = t.cases;
        r.passed = t.worst <= tol;
    } catch (const std::exception &e) {
        r.detail = e.what();
    }
    return r;
}

// Pairs of beliefs on a qubit covering equivalent constructions (product with
// a shared S factor, register isometry, ancilla then isometry) and
// inequivalent ones (register dephasing at fixed marginal, independent draws).
std::pair<Belief, Belief> belief_pair(Rng &rng, int kind) {
    switch (kind % 5) {
        case 0: {
            const auto s = random_density(rng, 2).matrix();
            return {Belief(kron(s, random_density(rng, 2).matrix()), 2, 2),
                    Belief(kron(s, random_density(rng, 4, 2).matrix()), 2, 4)};
        }
        case 1: {
            const auto b = random_belief(rng, 2, 2, 1 + kind % 4);
            return {b, b.apply_isometry_on_register(random_isometry(rng, 4, 2))};
        }
        case 2: {
            const auto b = random_belief(rng, 2, 2, 2);
            return {b, b.tensor_ancilla(random_density(rng, 2))
                           .apply_isometry_on_register(random_unitary(rng, 4))};
        }
        case 3: {
            const auto b = random_belief(rng, 2, 2, 4);
            return {b, b.apply_channel_on_register(measurement_channel(z_basis_povm()))};
        }
        default:
            return {random_belief(rng, 2, 1 + kind % 4, 2), random_belief(rng, 2, 4, 1 + kind % 8)};
    }
}

StateEnsemble random_ensemble(Rng &rng, std::size_t n, bool pure) {
    const auto p = random_probabilities(rng, n);
    std::vector<EnsembleMember> members;
    for (std::size_t x = 0; x < n; ++x) {
        members.push_back({random_density(rng, 2, pure ? 1 : 2), p[x]});
    }
    return StateEnsemble(members);
}

// Moment-based and signature-based verdicts on 50 ensemble pairs; returns the
// number of disagreements.
Tally ensemble_verdict_mismatches(Rng &rng, bool pure) {
    Tally t;
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_ensemble(rng, 2 + trial % 4, pure);
        StateEnsemble b = a;
        if (trial % 2 == 1) {
            b = random_ensemble(rng, 2 + trial % 4, pure);
        } else {
            std::vector<EnsembleMember> m(a.members().rbegin(), a.members().rend());
            m.back().probability /= 2;
            m.push_back(m.back());
            b = StateEnsemble(m);
        }
        const auto moment = [pure](const StateEnsemble &e) {
            return pure ? ensemble_second_moment(e) : ensemble_sqrt_moment(e);
        };
        const bool by_moment = frobenius_distance(moment(a), moment(b)) <= kEquivalenceTol;
        const bool by_signature =
            equivalent(ensemble_to_belief(a), ensemble_to_belief(b)).equivalent;
        t.add(by_moment == by_signature ? 0.0 : 1.0);
    }
    return t;
}

}  // namespace

std::vector<PropertyResult> verify(std::uint64_t seed) {
    std::vector<PropertyResult> results;
    const auto add = [&](const std::string &name, double tol, const std::function<Tally(Rng &)> &f,
                         std::uint64_t stream) {
        results.push_back(run(name, tol, [&] {
            Rng rng(seed ^ (stream * 0x9E3779B97F4A7C15ull));
            return f(rng);
        }));
    };

    add("random channels validate and satisfy the adjoint identity", 1e-10,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 50; ++i) {
                const auto e = random_channel(rng, 2 + i % 2, 2 + i % 3, 1 + i % 4);
                const auto x = random_gaussian(rng, e.dim_in(), e.dim_in());
                const auto y = random_gaussian(rng, e.dim_out(), e.dim_out());
                t.add(std::abs(hs_inner(e.apply(x), y) - hs_inner(x, e.adjoint_apply(y))));
            }
            return t;
        },
        1);
    add("measurement channel outputs Born weights on the diagonal", 1e-12,
        [](Rng &rng) {
            Tally t;
            for (const auto &povm : {z_basis_povm(), x_basis_povm(), sic_povm()}) {
                const auto e = measurement_channel(povm);
                for (int i = 0; i < 10; ++i) {
                    const auto rho = random_density(rng, 2).matrix();
                    const auto out = e.apply(rho);
                    for (std::size_t a = 0; a < povm.size(); ++a) {
                        for (std::size_t b = 0; b < povm.size(); ++b) {
                            const Complex want =
                                a == b ? hs_inner(povm.effects()[a], rho) : Complex(0);
                            t.add(std::abs(out(a, b) - want));
                        }
                    }
                }
            }
            return t;
        },
        2);
    add("built-in beliefs have marginal 1/2", 1e-12,
        [](Rng &) {
            Tally t;
            for (const auto b : kAllBuiltinBeliefs) {
                t.add(frobenius_distance(builtin_belief(b).marginal_s().matrix(),
                                         ComplexMatrix::identity(2) / 2.0));
            }
            return t;
        },
        3);
    add("table1: 16 cells match the closed forms", 1e-9,
        [](Rng &) {
            Tally t;
            for (const auto &c : table1().cells) {
                t.add(c.deviation);
            }
            return t;
        },
        4);
    add("fig1: post-channel radius 0.9, flat 0.81, improper 1/2", 1e-9,
        [](Rng &) {
            Tally t;
            for (const auto &c : fig1(64)) {
                for (const auto &p : c.points) {
                    t.add(std::abs(p.channel.radius() - 0.9));
                    if (c.belief == BuiltinBelief::flat) {
                        t.add(std::abs(p.recovered.radius() - 0.81));
                    }
                    if (c.belief == BuiltinBelief::improper_phi_plus) {
                        t.add(p.recovered.radius());
                    }
                }
            }
            return t;
        },
        5);
    add("prior recovery: petz(e, b, e(b)) = b", 1e-9,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 50; ++i) {
                const auto e = random_channel(rng, 2 + i % 2, 2 + i % 3, 2 + i % 3);
                const auto prior = random_density(rng, e.dim_in());
                t.add(frobenius_distance(petz(e, prior, apply_channel(e, prior)).matrix(),
                                         prior.matrix()));
            }
            return t;
        },
        6);
    add("joint prior recovery for the extended map", 1e-9,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 50; ++i) {
                const std::size_t dr = 1 + i % 3;
                const auto b = random_belief(rng, 2, dr, 2 * dr);
                const auto e = random_channel(rng, 2, 2 + i % 2, 2);
                const auto r = petz_extended(e, b, apply_channel(e, b.marginal_s()));
                t.add(frobenius_distance(*r.updated_joint, b.joint().matrix()));
            }
            return t;
        },
        7);
    add("pure joint beliefs are fixed points", 1e-9,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 30; ++i) {
                const auto b = random_belief(rng, 2, 2 + i % 2, 1);
                const auto e = random_channel(rng, 2, 2 + i % 2, 2);
                const auto r = petz_extended(e, b, random_density(rng, e.dim_out()),
                                             {.project_support = true});
                t.add(frobenius_distance(*r.updated_joint, b.joint().matrix()));
            }
            return t;
        },
        8);
    add("product beliefs reduce to the plain Petz map", 1e-10,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 30; ++i) {
                const auto s = random_density(rng, 2);
                const auto r = random_density(rng, 2 + i % 2);
                const Belief b(kron(s.matrix(), r.matrix()), 2, r.dim());
                const auto e = random_channel(rng, 2, 3, 2);
                const auto sigma = random_density(rng, 3);
                t.add(frobenius_distance(petz_extended(e, b, sigma).updated_s,
                                         petz(e, s, sigma).matrix()));
            }
            return t;
        },
        9);
    add("updates preserve the trace", 1e-10,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 30; ++i) {
                const auto b = random_belief(rng, 2, 1 + i % 3, 2);
                const auto e = random_channel(rng, 2, 2 + i % 2, 2);
                const auto r = petz_extended(e, b, random_density(rng, e.dim_out()));
                t.add(std::abs(r.updated_s.trace().real() - 1.0));
            }
            return t;
        },
        10);
    add("2-designs: second moments equal (1 + SWAP)/6", 1e-12,
        [](Rng &) {
            ComplexMatrix sym = ComplexMatrix::identity(4);
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) {
                    sym(i * 2 + j, j * 2 + i) += 1.0;
                }
            }
            sym /= 6.0;
            Tally t;
            t.add(frobenius_distance(ensemble_second_moment(pauli_six_ensemble()), sym));
            t.add(frobenius_distance(ensemble_second_moment(sic_ensemble()), sym));
            return t;
        },
        11);
    add("2-designs: beta-xyz and beta-sic share a signature", 1e-9,
        [](Rng &) {
            Tally t;
            t.add(equivalent(builtin_belief(BuiltinBelief::xyz_design),
                             builtin_belief(BuiltinBelief::sic_design))
                      .signature_distance);
            return t;
        },
        12);
    add("signature invariant under appended ancillas", 1e-10,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 50; ++i) {
                const auto b = random_belief(rng, 2, 1 + i % 3, 2);
                t.add(frobenius_distance(signature(b.tensor_ancilla(random_density(rng, 2))).op,
                                         signature(b).op));
            }
            return t;
        },
        13);
    add("signature invariant under register isometries", 1e-10,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 50; ++i) {
                const std::size_t dr = 1 + i % 3;
                const auto b = random_belief(rng, 2, dr, 2);
                const auto v = random_isometry(rng, dr + 1 + i % 2, dr);
                t.add(frobenius_distance(signature(b.apply_isometry_on_register(v)).op,
                                         signature(b).op));
            }
            return t;
        },
        14);
    add("signature invariant under reversible register channels", 1e-10,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 50; ++i) {
                const auto b = random_belief(rng, 2, 2, 2);
                const auto moved = b.tensor_ancilla(random_density(rng, 2))
                                       .apply_isometry_on_register(random_isometry(rng, 5, 4));
                t.add(frobenius_distance(signature(moved).op, signature(b).op));
            }
            return t;
        },
        15);
    add("signature and oracle agree on 100 belief pairs (mismatch count)", 0.0,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 100; ++i) {
                const auto [b1, b2] = belief_pair(rng, i);
                const bool fast = equivalent(b1, b2).equivalent;
                const bool slow = oracle_equivalent(b1, b2, {.seed = rng()}).equivalent;
                t.add(fast == slow ? 0.0 : 1.0);
            }
            return t;
        },
        16);
    add("equivalent beliefs have equal marginals", 1e-9,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 50; ++i) {
                const auto [b1, b2] = belief_pair(rng, i);
                const auto r = equivalent(b1, b2);
                if (r.equivalent) {
                    t.add(r.marginal_distance);
                }
            }
            return t;
        },
        17);
    add("pure ensembles: second-moment and signature verdicts agree (mismatch count)", 0.0,
        [](Rng &rng) { return ensemble_verdict_mismatches(rng, true); }, 18);
    add("mixed ensembles: root-moment and signature verdicts agree (mismatch count)", 0.0,
        [](Rng &rng) { return ensemble_verdict_mismatches(rng, false); }, 19);
    add("classical: hidden variable never changes the marginal update", 1e-12,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 1000; ++i) {
                const std::size_t na = 2 + i % 3, nc = 1 + (i / 3) % 4, nb = 2 + (i / 12) % 3;
                const classical::JointDistribution joint(
                    classical::random_distribution(rng, na * nc).weights(), na, nc);
                const auto phi = classical::random_stochastic(rng, nb, na);
                const auto r = classical::random_distribution(rng, nb);
                const auto q1 = classical::jeffrey_update(joint.marginal_a(), phi, r);
                const auto q2 = classical::jeffrey_update_extended(joint, phi, r).marginal_a();
                double worst = 0;
                for (std::size_t a = 0; a < na; ++a) {
                    worst = std::max(worst, std::abs(q1[a] - q2[a]));
                }
                t.add(worst);
            }
            return t;
        },
        20);
    add("classical: diagonal quantum update equals Jeffrey's rule", 1e-10,
        [](Rng &rng) {
            Tally t;
            for (int i = 0; i < 100; ++i) {
                const std::size_t na = 2 + i % 2, nb = 2 + (i / 2) % 2;
                const auto prior = classical::random_distribution(rng, na);
                const auto phi = classical::random_stochastic(rng, nb, na);
                const auto r = classical::random_distribution(rng, nb);
                const auto quantum =
                    petz_extended(phi.as_channel(),
                                  Belief::without_register(
                                      DensityOperator(ComplexMatrix::diagonal(prior.weights()))),
                                  DensityOperator(ComplexMatrix::diagonal(r.weights())))
                        .updated_s;
                t.add(frobenius_distance(
                    quantum,
                    ComplexMatrix::diagonal(classical::jeffrey_update(prior, phi, r).weights())));
            }
            return t;
        },
        21);
    return results;
}

}  // namespace retro::scenarios
