#include "latmol/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace latmol::protocol {

namespace {

constexpr Complex minus_i{0.0, -1.0};

int qubit_bit(Subsystem s) {
    switch (s) {
        case Subsystem::Cs: return 2;
        case Subsystem::LiA: return 1;
        case Subsystem::LiB: return 0;
    }
    throw std::logic_error("bad subsystem");
}

MolLevel other_level(MolLevel m) {
    return m == MolLevel::M ? MolLevel::MPrime : MolLevel::M;
}

// splitmix64; decorrelates per-trial streams drawn from one seed.
std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

int ProtocolRegister::index(MolLevel flag, int cs, int la, int lb) {
    return int(flag) * 8 + cs * 4 + la * 2 + lb;
}

Complex& ProtocolRegister::at(MolLevel flag, int cs, int la, int lb) {
    return amps[index(flag, cs, la, lb)];
}

const Complex& ProtocolRegister::at(MolLevel flag, int cs, int la, int lb) const {
    return amps[index(flag, cs, la, lb)];
}

double ProtocolRegister::molecular_population(MolLevel level) const {
    double p = 0;
    for (int q = 0; q < 8; ++q) p += std::norm(amps[int(level) * 8 + q]);
    return p;
}

ProtocolRegister basis_state(int cs, int la, int lb) {
    ProtocolRegister reg;
    reg.at(MolLevel::None, cs, la, lb) = 1.0;
    return reg;
}

ProtocolRegister protocol_input() {
    ProtocolRegister reg;
    const double s = 1.0 / std::sqrt(2.0);
    reg.at(MolLevel::None, 0, 0, 0) = s;
    reg.at(MolLevel::None, 1, 0, 0) = s;
    return reg;
}

std::array<PulseChannel, 2> create_channels() {
    return {PulseChannel{0, 0, Subsystem::LiA, MolLevel::M},
            PulseChannel{0, 1, Subsystem::LiA, MolLevel::M}};
}

std::array<PulseChannel, 2> swap_channels() {
    return {PulseChannel{1, 0, Subsystem::LiB, MolLevel::MPrime},
            PulseChannel{0, 1, Subsystem::LiB, MolLevel::MPrime}};
}

ProtocolRegister apply_pi_pulse(ProtocolRegister reg, const PulseChannel& ch,
                                double amplitude_transmission) {
    if (ch.mol == MolLevel::None)
        throw std::domain_error("pi pulse: channel must name a molecular level");
    if (ch.target == Subsystem::Cs)
        throw std::domain_error("pi pulse: molecular channels bind the messenger to a Li qubit");
    if (reg.molecular_population(other_level(ch.mol)) > 1e-12)
        throw std::domain_error(
            "pi pulse: other molecular level occupied by an unfinished composite");
    if (amplitude_transmission < 0 || amplitude_transmission > 1)
        throw std::domain_error("pi pulse: transmission must be in [0, 1]");

    const bool on_a = ch.target == Subsystem::LiA;
    for (int spect = 0; spect < 2; ++spect) {
        const int la = on_a ? ch.li : spect;
        const int lb = on_a ? spect : ch.li;
        const int i_pair = ProtocolRegister::index(MolLevel::None, ch.cs, la, lb);
        // molecular ket: bound pair's bits canonicalized to zero
        const int i_mol = ProtocolRegister::index(ch.mol, 0, on_a ? 0 : spect,
                                                  on_a ? spect : 0);
        const Complex pair_amp = reg.amps[i_pair];
        const Complex mol_amp = reg.amps[i_mol];
        reg.amps[i_pair] = minus_i * mol_amp;
        reg.amps[i_mol] = minus_i * pair_amp;
    }
    if (amplitude_transmission != 1.0) reg.amps *= amplitude_transmission;
    return reg;
}

namespace {

ProtocolRegister composite_pulse_pair(ProtocolRegister reg, const PulseChannel& in,
                                      const PulseChannel& out, const GateErrors& err) {
    if (in == out)
        throw std::domain_error("composite pulse pair: in and out channels coincide");
    const double t = std::sqrt(err.fidelity_per_pulse) *
                     std::sqrt(1.0 - err.leakage_per_pulse);
    reg = apply_pi_pulse(std::move(reg), in, t);
    reg = apply_pi_pulse(std::move(reg), out, t);
    return reg;
}

void check_subspace(const ProtocolRegister& reg, const std::vector<int>& allowed,
                    const char* what) {
    const double total = reg.norm_squared();
    if (total <= 0) throw std::domain_error("entangle step: empty register");
    double inside = 0;
    for (int idx : allowed) inside += std::norm(reg.amps[idx]);
    if (inside / total < 1.0 - 1e-9)
        throw std::domain_error(std::string("entangle step precondition: state is not ") + what);
}

} // namespace

ProtocolRegister entangle_step(ProtocolRegister reg, EntangleStep step,
                               const GateErrors& err) {
    if (err.fidelity_per_pulse <= 0 || err.fidelity_per_pulse > 1)
        throw std::domain_error("entangle step: fidelity per pulse must be in (0, 1]");
    if (err.leakage_per_pulse < 0 || err.leakage_per_pulse >= 1)
        throw std::domain_error("entangle step: leakage per pulse must be in [0, 1)");
    if (step == EntangleStep::Create) {
        check_subspace(reg,
                       {ProtocolRegister::index(MolLevel::None, 0, 0, 0),
                        ProtocolRegister::index(MolLevel::None, 1, 0, 0)},
                       "(Cs superposition) x |LiA:0> x |LiB:0>");
        const auto ch = create_channels();
        return composite_pulse_pair(std::move(reg), ch[0], ch[1], err);
    }
    check_subspace(reg,
                   {ProtocolRegister::index(MolLevel::None, 0, 1, 0),
                    ProtocolRegister::index(MolLevel::None, 1, 0, 0)},
                   "a Cs-LiA entangled pair with |LiB:0>");
    const auto ch = swap_channels();
    return composite_pulse_pair(std::move(reg), ch[0], ch[1], err);
}

ProtocolRegister single_qubit_rotation(ProtocolRegister reg, Subsystem target,
                                       double theta, double phi,
                                       const GateErrors& err) {
    if (target == Subsystem::Cs)
        throw std::domain_error("single_qubit_rotation targets a Li qubit");
    if (err.fidelity_per_pulse <= 0 || err.fidelity_per_pulse > 1 ||
        err.leakage_per_pulse < 0 || err.leakage_per_pulse >= 1)
        throw std::domain_error("single_qubit_rotation: error budget out of range");
    const double c = std::cos(theta / 2.0);
    const Complex s = minus_i * std::sin(theta / 2.0);
    const Complex u01 = s * std::exp(Complex(0.0, -phi));
    const Complex u10 = s * std::exp(Complex(0.0, phi));

    const int bit = qubit_bit(target);
    for (int flag = 0; flag < 3; ++flag) {
        // A bound atom does not respond to the free-atom rf drive: the
        // rotation acts on a molecular sector only when the target qubit is
        // that sector's spectator.
        const MolLevel level = MolLevel(flag);
        if (level == MolLevel::M && target != Subsystem::LiB) continue;
        if (level == MolLevel::MPrime && target != Subsystem::LiA) continue;
        for (int q = 0; q < 8; ++q) {
            if ((q >> bit) & 1) continue;
            const int i0 = flag * 8 + q;
            const int i1 = flag * 8 + (q | (1 << bit));
            const Complex a0 = reg.amps[i0];
            const Complex a1 = reg.amps[i1];
            reg.amps[i0] = c * a0 + u01 * a1;
            reg.amps[i1] = u10 * a0 + c * a1;
        }
    }
    const double t = std::sqrt(err.fidelity_per_pulse) *
                     std::sqrt(1.0 - err.leakage_per_pulse);
    if (t != 1.0) reg.amps *= t * t; // two pulses per composite rotation
    return reg;
}

ProtocolRegister apply_transport_loss(ProtocolRegister reg, double p1) {
    if (p1 < 0 || p1 > 1)
        throw std::domain_error("transport loss: p1 must be in [0, 1]");
    reg.amps *= std::sqrt(1.0 - p1);
    return reg;
}

namespace {

void require_free_atoms(const ProtocolRegister& reg) {
    if (reg.molecular_population(MolLevel::M) > 1e-12 ||
        reg.molecular_population(MolLevel::MPrime) > 1e-12)
        throw std::domain_error("reduced state: molecular level occupied");
}

} // namespace

Eigen::Matrix4cd reduced_density(const ProtocolRegister& reg, Subsystem a, Subsystem b) {
    require_free_atoms(reg);
    if (a == b) throw std::domain_error("reduced_density: need two distinct subsystems");
    const int ba = qubit_bit(a), bb = qubit_bit(b);
    int bc = 0 + 1 + 2 - ba - bb; // remaining qubit's bit
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib)
            for (int ja = 0; ja < 2; ++ja)
                for (int jb = 0; jb < 2; ++jb)
                    for (int c = 0; c < 2; ++c) {
                        const int qi = (ia << ba) | (ib << bb) | (c << bc);
                        const int qj = (ja << ba) | (jb << bb) | (c << bc);
                        rho(ia * 2 + ib, ja * 2 + jb) +=
                            reg.amps[qi] * std::conj(reg.amps[qj]);
                    }
    return rho;
}

Eigen::Matrix2cd reduced_density(const ProtocolRegister& reg, Subsystem a) {
    require_free_atoms(reg);
    const int ba = qubit_bit(a);
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int rest = 0; rest < 8; ++rest) {
                if ((rest >> ba) & 1) continue;
                const int qi = rest | (i << ba);
                const int qj = rest | (j << ba);
                rho(i, j) += reg.amps[qi] * std::conj(reg.amps[qj]);
            }
    return rho;
}

double concurrence(const ProtocolRegister& reg, Subsystem a, Subsystem b) {
    const Eigen::Matrix4cd rho = reduced_density(reg, a, b);
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    // sigma_y (x) sigma_y in the computational basis
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    // The Wootters lambdas are the singular values of sqrt(rho) YY sqrt(rho)*,
    // which avoids taking square roots of near-zero eigenvalues of rho rho~.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    Eigen::Matrix4cd sqrt_rho = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) {
        const double ev = std::max(0.0, es.eigenvalues()[i]);
        sqrt_rho += std::sqrt(ev) * es.eigenvectors().col(i) *
                    es.eigenvectors().col(i).adjoint();
    }
    const Eigen::Matrix4cd c = sqrt_rho * yy * sqrt_rho.conjugate();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(c);
    const Eigen::Vector4d lams = svd.singularValues(); // sorted descending
    return std::max(0.0, lams[0] - lams[1] - lams[2] - lams[3]);
}

double purity(const ProtocolRegister& reg, Subsystem a) {
    const Eigen::Matrix2cd rho = reduced_density(reg, a);
    return (rho * rho).trace().real();
}

double state_fidelity(const ProtocolRegister& reg, const ProtocolRegister& target) {
    return std::norm(target.amps.dot(reg.amps));
}

ProtocolRegister protocol_target() {
    ProtocolRegister t;
    const double s = -1.0 / std::sqrt(2.0);
    t.at(MolLevel::None, 0, 1, 0) = s;
    t.at(MolLevel::None, 0, 0, 1) = s;
    return t;
}

std::vector<KetTerm> ket_expansion(const ProtocolRegister& reg, double threshold) {
    std::vector<KetTerm> terms;
    for (int flag = 0; flag < 3; ++flag) {
        for (int q = 0; q < 8; ++q) {
            const Complex a = reg.amps[flag * 8 + q];
            if (std::abs(a) < threshold) continue;
            const int cs = (q >> 2) & 1, la = (q >> 1) & 1, lb = q & 1;
            std::string label;
            if (MolLevel(flag) == MolLevel::None) {
                label = "|Cs:" + std::to_string(cs) + " LiA:" + std::to_string(la) +
                        " LiB:" + std::to_string(lb) + ">";
            } else if (MolLevel(flag) == MolLevel::M) {
                label = "|M(Cs-LiA) LiB:" + std::to_string(lb) + ">";
            } else {
                label = "|M'(Cs-LiB) LiA:" + std::to_string(la) + ">";
            }
            terms.push_back({label, a});
        }
    }
    return terms;
}

FidelityReport error_injected_run(const std::vector<PulseBudget>& budgets,
                                  double transport_p1, int trials,
                                  std::uint64_t seed, int jobs) {
    if (budgets.size() != 4)
        throw std::domain_error("error_injected_run: need budgets for 4 transitions");
    if (transport_p1 < 0 || transport_p1 > 1)
        throw std::domain_error("error_injected_run: p1 must be in [0, 1]");
    if (trials < 1) throw std::domain_error("error_injected_run: trials must be >= 1");
    for (const auto& b : budgets)
        if (b.overlap_fidelity <= 0 || b.overlap_fidelity > 1 || b.leakage < 0 ||
            b.leakage >= 1)
            throw std::domain_error("error_injected_run: budget out of range");

    FidelityReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.multiplicative = 1.0 - transport_p1;
    for (const auto& b : budgets)
        rep.multiplicative *= b.overlap_fidelity * (1.0 - b.leakage);

    // Gaussian offset spread reproducing each budget's mean fidelity:
    // E[exp(-delta^2/r0^2)] = (1 + 2 sigma^2/r0^2)^{-1/2} = F.
    std::array<double, 4> spread{};
    for (int i = 0; i < 4; ++i) {
        const double f = budgets[i].overlap_fidelity;
        spread[i] = std::sqrt((1.0 / (f * f) - 1.0) / 2.0);
    }

    const ProtocolRegister target = protocol_target();
    const auto ch_create = create_channels();
    const auto ch_swap = swap_channels();

    std::vector<double> fid(trials);
    auto run_range = [&](int begin, int end) {
        for (int t = begin; t < end; ++t) {
            std::mt19937_64 rng(mix_seed(seed ^ std::uint64_t(t)));
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::uniform_real_distribution<double> uni(0.0, 1.0);

            std::array<double, 4> transmission{};
            for (int i = 0; i < 4; ++i) {
                const double u = gauss(rng) * spread[i];
                const double f_i = std::exp(-u * u); // exp(-delta^2/r0^2)
                transmission[i] =
                    std::sqrt(f_i) * std::sqrt(1.0 - budgets[i].leakage);
            }
            const bool excited = uni(rng) < transport_p1;
            if (excited) {
                fid[t] = 0.0;
                continue;
            }
            ProtocolRegister reg = protocol_input();
            reg = apply_pi_pulse(std::move(reg), ch_create[0], transmission[0]);
            reg = apply_pi_pulse(std::move(reg), ch_create[1], transmission[1]);
            reg = apply_pi_pulse(std::move(reg), ch_swap[0], transmission[2]);
            reg = apply_pi_pulse(std::move(reg), ch_swap[1], transmission[3]);
            fid[t] = state_fidelity(reg, target);
        }
    };

    const int n_jobs = std::max(1, jobs);
    if (n_jobs == 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> workers;
        const int chunk = (trials + n_jobs - 1) / n_jobs;
        for (int s = 0; s < trials; s += chunk)
            workers.emplace_back(run_range, s, std::min(s + chunk, trials));
        for (auto& w : workers) w.join();
    }

    double sum = 0, sum_sq = 0;
    for (double f : fid) {
        sum += f;
        sum_sq += f * f;
    }
    rep.monte_carlo = sum / trials;
    const double var =
        std::max(0.0, sum_sq / trials - rep.monte_carlo * rep.monte_carlo);
    rep.mc_sigma = std::sqrt(var / trials);
    return rep;
}

} // namespace latmol::protocol
