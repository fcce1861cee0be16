#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace latmol::protocol {

using Complex = std::complex<double>;

enum class Subsystem { Cs, LiA, LiB };
enum class MolLevel { None, M, MPrime };

/// Register over (Cs qubit) x (LiA qubit) x (LiB qubit) x (molecular flag
/// in {none, M, M'}): 8 x 3 = 24 amplitudes. Molecular kets keep the
/// spectator qubit's label and canonicalize the bound pair's bits to zero.
struct ProtocolRegister {
    static constexpr int dim = 24;
    Eigen::Vector<Complex, dim> amps = Eigen::Vector<Complex, dim>::Zero();

    static int index(MolLevel flag, int cs, int la, int lb);
    Complex& at(MolLevel flag, int cs, int la, int lb);
    const Complex& at(MolLevel flag, int cs, int la, int lb) const;

    double norm_squared() const { return amps.squaredNorm(); }
    /// Population currently parked in a molecular level.
    double molecular_population(MolLevel level) const;
};

/// |Cs:cs, LiA:la, LiB:lb, none> basis state.
ProtocolRegister basis_state(int cs, int la, int lb);

/// Messenger prepared in (|0> + |1>)/sqrt(2), both qubits in |0>.
ProtocolRegister protocol_input();

/// One rf channel: couples the pair state (Cs:cs, target-Li:li) to a
/// molecular level, identically for both values of the spectator qubit.
struct PulseChannel {
    int cs = 0;
    int li = 0;
    Subsystem target = Subsystem::LiA; // LiA or LiB
    MolLevel mol = MolLevel::M;        // M or MPrime
    bool operator==(const PulseChannel&) const = default;
};

/// Channels realizing the two-step entanglement protocol: |M> lives in the
/// Cs=0 manifold and mediates the messenger-qubit gate on LiA; |M'> lives in
/// the Cs=1 manifold and mediates the swap onto LiB.
std::array<PulseChannel, 2> create_channels();
std::array<PulseChannel, 2> swap_channels();

/// Resonant pi pulse on the two-level pair {|pair>, |mol>}:
/// |pair> -> -i |mol>, |mol> -> -i |pair>, identity elsewhere.
/// `amplitude_transmission` scales the whole register after the pulse
/// (1 = ideal); losses model population left behind in untracked states.
/// Throws std::domain_error when the other molecular level is still occupied
/// by an unfinished composite.
ProtocolRegister apply_pi_pulse(ProtocolRegister reg, const PulseChannel& ch,
                                double amplitude_transmission = 1.0);

struct GateErrors {
    double fidelity_per_pulse = 1.0; // overlap fidelity F per pi pulse
    double leakage_per_pulse = 0.0;  // off-resonant transfer dp per pi pulse
};

enum class EntangleStep { Create, Swap };

/// Two-pulse composite implementing one protocol step. In the ideal case
/// Create maps (|00> + |10>)/sqrt2 (x) |0> to (-|01> + |10>)/sqrt2 (x) |0>
/// and Swap maps that onto -|0> (x) (|10> + |01>)/sqrt2.
/// Throws std::domain_error when the input is outside the step's expected
/// subspace by more than 1e-9 of its population.
ProtocolRegister entangle_step(ProtocolRegister reg, EntangleStep step,
                               const GateErrors& err = {});

/// Bloch rotation about the equatorial axis at azimuth phi by angle theta on
/// one Li qubit (the messenger-mediated composite applied as its net
/// unitary: U = cos(theta/2) I - i sin(theta/2)(cos phi X + sin phi Y)).
ProtocolRegister single_qubit_rotation(ProtocolRegister reg, Subsystem target,
                                       double theta, double phi,
                                       const GateErrors& err = {});

/// Global amplitude factor sqrt(1 - p1) modelling adiabatic transport loss.
ProtocolRegister apply_transport_loss(ProtocolRegister reg, double p1);

/// Reduced 4x4 density matrix of an ordered subsystem pair (other qubit
/// traced out). Requires all molecular population < 1e-12.
Eigen::Matrix4cd reduced_density(const ProtocolRegister& reg, Subsystem a, Subsystem b);
Eigen::Matrix2cd reduced_density(const ProtocolRegister& reg, Subsystem a);

/// Wootters concurrence of the pair's reduced state, in [0, 1].
double concurrence(const ProtocolRegister& reg, Subsystem a, Subsystem b);

/// tr(rho^2) of one qubit's reduced state.
double purity(const ProtocolRegister& reg, Subsystem a);

/// |<target|reg>|^2 (no renormalization: lost amplitude counts as error).
double state_fidelity(const ProtocolRegister& reg, const ProtocolRegister& target);

/// Bell target of the full protocol: -(|010> + |001>)/sqrt2.
ProtocolRegister protocol_target();

struct KetTerm {
    std::string label;
    Complex amplitude;
};

/// Non-negligible amplitudes (>= threshold) with human-readable ket labels.
std::vector<KetTerm> ket_expansion(const ProtocolRegister& reg,
                                   double threshold = 1e-6);

struct PulseBudget {
    double overlap_fidelity = 1.0; // F per transition
    double leakage = 0.0;          // dp per transition
};

struct FidelityReport {
    double multiplicative = 0; // prod F_i * prod (1 - dp_i) * (1 - p1)
    double monte_carlo = 0;    // mean over trials of |<target|psi>|^2
    double mc_sigma = 0;       // standard error of the mean
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Budgets must hold exactly four entries (four atom-molecule transitions).
/// The Monte-Carlo route redraws the lattice offset per pulse (Gaussian,
/// scaled so the mean per-pulse fidelity equals the budget F) and treats
/// transport excitation as a Bernoulli loss of the trial.
FidelityReport error_injected_run(const std::vector<PulseBudget>& budgets,
                                  double transport_p1, int trials,
                                  std::uint64_t seed, int jobs = 1);

} // namespace latmol::protocol
