#include <cmath>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fefwork/certify.hpp"
#include "fefwork/io.hpp"

namespace py = pybind11;
using namespace fefwork;

namespace {

BipartiteState asState(const CMatrix& rho) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rho.rows()))));
  return BipartiteState(d, rho);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fully entangled fraction, conditional entropies and work bounds";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InvalidProcess>(m, "InvalidProcess", PyExc_ValueError);

  m.def("singlet_state", [](int d) { return singletState(d).matrix(); }, py::arg("d"));
  m.def("isotropic_state", [](int d, double p) { return materialize(IsotropicParams(d, p)).matrix(); },
        py::arg("d"), py::arg("p"));
  m.def(
      "random_state",
      [](int d, int rank, std::uint64_t seed) {
        Rng rng(seed);
        return randomState(d, rank, rng).matrix();
      },
      py::arg("d"), py::arg("rank"), py::arg("seed") = 0);

  m.def(
      "fef_seesaw",
      [](const CMatrix& rho, int restarts, int maxIter, double tol, std::uint64_t seed) {
        const FefResult r = fefSeeSaw(asState(rho), {restarts, maxIter, tol, seed});
        py::dict out;
        out["value"] = r.value;
        out["optimal_u"] = r.optimalU;
        out["restarts_used"] = r.restartsUsed;
        out["converged"] = r.converged;
        return out;
      },
      py::arg("rho"), py::arg("restarts") = 16, py::arg("max_iter") = 500, py::arg("tol") = 1e-10,
      py::arg("seed") = 0);

  m.def(
      "fef_monte_carlo",
      [](const CMatrix& rho, int samples, std::uint64_t seed) {
        return fefMonteCarlo(asState(rho), samples, seed);
      },
      py::arg("rho"), py::arg("samples"), py::arg("seed") = 0);

  m.def(
      "q_function",
      [](const CMatrix& rho, double tol) {
        QOptions o;
        o.tol = tol;
        const QResult q = qFunction(asState(rho), o);
        py::dict out;
        out["q_primal"] = q.qPrimal;
        out["q_dual"] = q.qDual;
        out["h_min"] = q.hMin;
        out["gap"] = q.gap;
        out["converged"] = q.converged;
        return out;
      },
      py::arg("rho"), py::arg("tol") = 1e-9);

  m.def("entropy_report_json", [](const CMatrix& rho) { return toJson(entropyReport(asState(rho))).dump(); },
        py::arg("rho"));
  m.def("twirl_json", [](const CMatrix& rho) { return toJson(twirl(asState(rho))).dump(); }, py::arg("rho"));
  m.def(
      "isotropic_thresholds_json",
      [](int d, double kbt) { return toJson(isotropicThresholds(d, TemperatureScale(kbt))).dump(); },
      py::arg("d"), py::arg("kbt") = 1.0);

  m.def(
      "report_json",
      [](const CMatrix& rho, int restarts, std::uint64_t seed, double tol, double epsilon, double kbt) {
        ReportOptions o;
        o.seeSaw.restarts = restarts;
        o.seeSaw.seed = seed;
        o.tolSdp = tol;
        o.epsilon = epsilon;
        o.kbt = kbt;
        return toJson(buildReport(asState(rho), o)).dump();
      },
      py::arg("rho"), py::arg("restarts") = 16, py::arg("seed") = 0, py::arg("tol") = 1e-9,
      py::arg("epsilon") = 0.05, py::arg("kbt") = 1.0);

  m.def(
      "pipeline_json",
      [](const CMatrix& rho, const std::string& kind, double kbt) {
        const TemperatureScale t(kbt);
        const BipartiteState state = asState(rho);
        std::optional<ProcessSpec> spec;
        if (kind == "erase-extract") {
          spec = buildEraseExtractPipeline(state, -erasureCostUpper(entropyReport(state), t), t);
        } else if (kind == "twirl") {
          const HermitianEigen eig = hermitianEigen(state.matrix());
          if (eig.values(eig.values.size() - 1) < 1.0 - 1e-10)
            throw ValidationError("twirl pipeline needs a pure state");
          CVector v = eig.vectors.col(eig.vectors.cols() - 1);
          spec = buildTwirlPipeline(PureState(state.localDim(), v / v.norm()), t);
          if (!spec) throw ValidationError("twirl pipeline not applicable: F[T(phi)] <= 1/d");
        } else {
          throw ValidationError("kind must be erase-extract or twirl");
        }
        const ReplayOptions ro{kbt, SignConvention::LoweringIsGain};
        return toJson(replay(*spec, ro), ro).dump();
      },
      py::arg("rho"), py::arg("kind") = "erase-extract", py::arg("kbt") = 1.0);

  m.def(
      "certify",
      [](int d, int samples, std::uint64_t seed) {
        CertifyOptions o;
        o.seed = seed;
        const CertifySummary s = certify(d, samples, o);
        py::dict out;
        out["checked"] = s.checked;
        out["violations"] = s.violations.size();
        out["informational"] = s.informational.size();
        return out;
      },
      py::arg("d"), py::arg("samples"), py::arg("seed") = 0);
}
