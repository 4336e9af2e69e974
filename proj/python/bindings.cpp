#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "rotodiff/cli.hpp"
#include "rotodiff/localization.hpp"
#include "rotodiff/micro.hpp"
#include "rotodiff/planar.hpp"

namespace py = pybind11;
using namespace rotodiff;

namespace {

py::array_t<double> values_array(const planar::PlanarWignerState& s) {
  py::array_t<double> out({s.rows(), s.n_alpha()});
  std::copy(s.values().begin(), s.values().end(), out.mutable_data());
  return out;
}

planar::PlanarParams planar_params(double d1, double d2, double inertia, double hbar) {
  planar::PlanarParams p;
  p.d1 = d1;
  p.d2 = d2;
  p.inertia = inertia;
  p.hbar = hbar;
  return p;
}

Mat3 to_mat3(const std::array<std::array<double, 3>, 3>& rows) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rotational decoherence and diffusion of rigid rotors";
  m.attr("__version__") = cli::kVersion;

  static py::exception<cli::ValidationError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_RuntimeError);
  static py::exception<TruncationError> truncation_error(m, "TruncationError", numerical_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cli::ValidationError& e) {
      // (message, pointer) so callers can locate the bad value
      PyErr_SetObject(config_error.ptr(), py::make_tuple(e.what(), e.pointer()).ptr());
    } catch (const TruncationError& e) {
      PyErr_SetObject(truncation_error.ptr(), py::make_tuple(e.what(), e.achieved()).ptr());
    } catch (const NumericalError& e) {
      PyErr_SetObject(numerical_error.ptr(), py::make_tuple(e.what(), e.achieved()).ptr());
    } catch (const ConfigError& e) {
      PyErr_SetObject(config_error.ptr(), py::make_tuple(e.what(), "").ptr());
    }
  });

  // configs travel as JSON text; the Python side wraps them in dicts
  m.def("schema_text", [] { return cli::schema_text(); });
  m.def("canonicalize", [](const std::string& text) {
    cli::Json config;
    try {
      config = cli::Json::parse(text);
    } catch (const cli::Json::parse_error& e) {
      throw cli::ValidationError("", e.what());
    }
    return cli::canonicalize(config).dump();
  });
  m.def(
      "run",
      [](const std::string& text, const std::string& out_dir, unsigned threads,
         std::optional<std::uint64_t> seed) {
        const cli::Json config = cli::Json::parse(text);
        py::gil_scoped_release release;
        return cli::run_scenario(config, {out_dir, threads, seed}).dump();
      },
      py::arg("config"), py::arg("out_dir"), py::arg("threads") = 1, py::arg("seed") = py::none());
  m.def("sha256_hex", [](const py::bytes& b) { return cli::sha256_hex(std::string(b)); });

  m.def(
      "diffusion_constants",
      [](double amplitude, std::array<double, 3> a0, std::array<double, 3> b_eigenvalues,
         std::array<std::array<double, 3>, 3> b_axes_columns, double hbar) {
        localization::AnisotropySpec s;
        s.amplitude = amplitude;
        s.a0 = UnitVector(a0[0], a0[1], a0[2]);
        s.b_eigenvalues = b_eigenvalues;
        s.b_axes = to_mat3(b_axes_columns).transpose();
        s.validate();
        const auto c = localization::diffusion_constants(s, hbar);
        return py::dict(py::arg("d1") = c.d1, py::arg("d2") = c.d2);
      },
      py::arg("amplitude"), py::arg("a0") = std::array<double, 3>{0, 0, 1},
      py::arg("b_eigenvalues") = std::array<double, 3>{0, 0, 0},
      py::arg("b_axes") = std::array<std::array<double, 3>, 3>{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
      py::arg("hbar") = 1.0);

  py::class_<planar::PlanarWignerState>(m, "PlanarWignerState")
      .def_property_readonly("n_alpha", &planar::PlanarWignerState::n_alpha)
      .def_property_readonly("m_max", &planar::PlanarWignerState::m_max)
      .def_readwrite("t", &planar::PlanarWignerState::t)
      .def_property_readonly("values", &values_array, "copy, shape (2 m_max + 1, n_alpha)")
      .def_property_readonly("alpha",
                             [](const planar::PlanarWignerState& s) {
                               py::array_t<double> a(s.n_alpha());
                               for (int j = 0; j < s.n_alpha(); ++j) a.mutable_data()[j] = s.alpha(j);
                               return a;
                             })
      .def("total", &planar::PlanarWignerState::total)
      .def("boundary_mass", &planar::PlanarWignerState::boundary_mass);

  m.def("ground_state", &planar::ground_state, py::arg("n_alpha"), py::arg("m_max"));
  m.def(
      "packet_pair",
      [](int n_alpha, int m_max, double sigma_alpha) {
        return planar::wigner_from_wavefunction(planar::packet_pair_wavefunction(n_alpha, sigma_alpha),
                                                m_max);
      },
      py::arg("n_alpha"), py::arg("m_max"), py::arg("sigma_alpha"));
  m.def(
      "evolve_analytic",
      [](const planar::PlanarWignerState& s, double d1, double t, double inertia, double hbar) {
        py::gil_scoped_release release;
        return planar::evolve_analytic(s, planar_params(d1, 0.0, inertia, hbar), t);
      },
      py::arg("state"), py::arg("d1"), py::arg("t"), py::arg("inertia") = 1.0, py::arg("hbar") = 1.0);
  m.def(
      "evolve_numeric",
      [](const planar::PlanarWignerState& s, double d1, double d2, double t, double dt,
         double inertia, double hbar) {
        py::gil_scoped_release release;
        return planar::evolve_numeric(s, planar_params(d1, d2, inertia, hbar), t, dt);
      },
      py::arg("state"), py::arg("d1"), py::arg("d2") = 0.0, py::arg("t"), py::arg("dt") = 2.5e-4,
      py::arg("inertia") = 1.0, py::arg("hbar") = 1.0);
  m.def("momentum_distribution", [](const planar::PlanarWignerState& s) {
    const auto p = planar::momentum_distribution(s);
    return py::array_t<double>(static_cast<py::ssize_t>(p.size()), p.data());
  });
  m.def(
      "mean_energy",
      [](const planar::PlanarWignerState& s, double inertia, double hbar) {
        return planar::mean_energy(s, planar_params(0.0, 0.0, inertia, hbar));
      },
      py::arg("state"), py::arg("inertia") = 1.0, py::arg("hbar") = 1.0);
  m.def("coherence_contrast", &planar::coherence_contrast, py::arg("state"), py::arg("initial"),
        py::arg("sigma_alpha"));

  m.def(
      "rayleigh_gans_diffusion",
      [](double V0, double E0, double k, std::array<double, 3> chi, double epsilon0, double hbar) {
        micro::PhotonEnvironment env;
        env.V0 = V0;
        env.E0 = E0;
        env.k = k;
        env.chi = chi;
        env.epsilon0 = epsilon0;
        env.hbar = hbar;
        return micro::rayleigh_gans_diffusion(env);
      },
      py::arg("V0"), py::arg("E0"), py::arg("k"), py::arg("chi"),
      py::arg("epsilon0") = micro::PhotonEnvironment{}.epsilon0,
      py::arg("hbar") = micro::PhotonEnvironment{}.hbar);
}
