#include "hamsim/rlcu.hpp"
#include "hamsim/trotter.hpp"
#include "hamsim/mitigation.hpp"
#include <iostream>
int main() {
  using namespace hamsim;
  auto h = parse_hamiltonian("1.0 XI\n1.0 ZZ\n");
  std::cout << "c1 " << c1_prefactor(h) << " ac1 " << alpha_comm(h,1) << " ac2 " << alpha_comm(h,2) << "\n";
  auto f = build_formula(h, 4);
  std::cout << "ups4 " << f.stage_count << " stages " << f.stages.size() << "\n";
  // order check at k=2
  auto f2 = build_formula(h, 2);
  double e1 = operator_norm(microstep_unitary(f2, h, 0.1) - exact_evolution(h, 0.1));
  double e2 = operator_norm(microstep_unitary(f2, h, 0.05) - exact_evolution(h, 0.05));
  std::cout << "k2 ratio (should be ~8): " << e1/e2 << "\n";
  std::cout << "lcu1(1) " << lcu_one_norm(1.0) << "\n";
  // rlcu noiseless quick
  auto obs = pauli_dense(PauliString::from_label("ZI"));
  auto rho0 = DensityMatrix::zero_state(2);
  auto est = run_rlcu_estimate(h, 0.5, 2, obs, rho0, std::nullopt, 20000, 3, {});
  auto u = exact_evolution(h, 0.5);
  double ideal = expectation(obs, DensityMatrix(u*rho0.matrix()*u.adjoint()));
  std::cout << "rlcu est " << est.mean << " +- " << est.std_error << " ideal " << ideal << "\n";
  // pec inversion
  auto inv = invert_pauli_channel(StochasticPauliChannel::depolarizing({0}, 0.05));
  std::cout << "pec gamma " << inv.gamma() << "\n";
  // trotter noisy bias
  NoiseModel nm(0.01, 0.001);
  double b = trotter_bias(h, 1.0, 4, 1, obs, rho0, nm);
  std::cout << "noisy bias N=4 " << b << " bound " << trotter_alpha(h,1,1.0)/4.0 + 2*4*0.01 << "\n";
  return 0;
}
