#include "kosc/as_oscillator.hpp"
#include "kosc/check.hpp"
#include "kosc/cli.hpp"
#include "kosc/coherent.hpp"
#include "kosc/oscillator.hpp"
#include "kosc/polynomials.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace kosc;

namespace
{

py::dict to_dict(const CheckReport& r)
{
    py::list entries;
    for (const auto& e : r.entries)
    {
        py::dict d;
        d["name"]      = e.name;
        d["residual"]  = e.residual;
        d["tolerance"] = e.tolerance;
        d["pass"]      = e.pass;
        d["note"]      = e.note;
        entries.append(d);
    }
    py::dict out;
    out["p"]       = r.p;
    out["N"]       = r.N;
    out["passed"]  = r.passed();
    out["entries"] = entries;
    out["notes"]   = r.notes;
    return out;
}

} // namespace

PYBIND11_MODULE(_kosc, m)
{
    m.doc() = "Krawtchouk oscillator: polynomials, operators, coherent states and invariant checks.";

    py::class_<OscillatorParams>(m, "OscillatorParams")
        .def(py::init<double, int>(), py::arg("p"), py::arg("N"))
        .def_property_readonly("p", &OscillatorParams::p)
        .def_property_readonly("q", &OscillatorParams::q)
        .def_property_readonly("N", &OscillatorParams::N)
        .def_property_readonly("dim", &OscillatorParams::dim)
        .def("__repr__", [](const OscillatorParams& s) {
            std::ostringstream o;
            o.precision(17);
            o << "OscillatorParams(p=" << s.p() << ", N=" << s.N() << ")";
            return o.str();
        });

    m.def("recurrence_coefficients", [](const OscillatorParams& s) {
        const auto rc = recurrence_coefficients(s);
        return py::make_tuple(rc.a, rc.b);
    });
    m.def("krawtchouk", &krawtchouk, py::arg("n"), py::arg("x"), py::arg("params"));
    m.def("weight", &weight, py::arg("n"), py::arg("params"));
    m.def("lattice", &lattice);
    m.def("renormalized_table", [](const OscillatorParams& s, const RealVector& x) {
        return renormalized_table(s, x).values;
    });
    m.def("recurrence_table", [](const OscillatorParams& s, const RealVector& x) {
        return recurrence_table(s, x).values;
    });
    m.def("orthogonality_gram", [](const OscillatorParams& s) {
        const auto g = orthogonality_gram(s);
        return py::make_tuple(g.gram, g.dual);
    });
    m.def("psi_roots", [](const OscillatorParams& s) {
        const auto r = psi_roots(s);
        return py::make_tuple(r.eigenvalues, r.eigenvectors);
    });
    m.def("eigh_tridiagonal", [](const RealVector& d, const RealVector& e) {
        const auto r = eigh_tridiagonal(SymTridiagonal(d, e));
        return py::make_tuple(r.eigenvalues, r.eigenvectors);
    });
    m.def("expm_skew_hermitian", &expm_skew_hermitian);

    m.def("ladder", [](const OscillatorParams& s) {
        const auto l = build_ladder(s);
        return py::make_tuple(l.raising.entries(), l.lowering.entries());
    });
    m.def("tilde_hamiltonian", [](const OscillatorParams& s) { return build_tilde_operators(s).h.entries(); });
    m.def("hamiltonian_eigenvalue", &hamiltonian_eigenvalue);
    m.def("h_as", [](const OscillatorParams& s) { return build_h_as(s).entries(); });
    m.def("intertwiner", [](const OscillatorParams& s) { return build_intertwiner(s).entries(); });
    m.def("krawtchouk_functions", &krawtchouk_functions);

    m.def("displacement_state", [](complex_t z, const OscillatorParams& s) {
        return displacement_state(z, s).vector.amplitudes();
    }, py::arg("z"), py::arg("params"));
    m.def("root_sum_state", [](complex_t z, const OscillatorParams& s) {
        return root_sum_state(z, s).vector.amplitudes();
    }, py::arg("z"), py::arg("params"));
    m.def("spin_state", [](complex_t xi, const OscillatorParams& s) {
        return spin_state(xi, s).vector.amplitudes();
    }, py::arg("xi"), py::arg("params"));
    m.def("phase_coherent_state", [](complex_t z, double theta0, const OscillatorParams& s) {
        return phase_coherent_state(z, theta0, s).vector.amplitudes();
    }, py::arg("z"), py::arg("theta0"), py::arg("params"));
    m.def("aligned_distance", &aligned_distance);

    m.def("run_checks", [](const OscillatorParams& s) {
        py::gil_scoped_release release;
        auto                   report = run_checks(s);
        py::gil_scoped_acquire acquire;
        return to_dict(report);
    });

    // Returns (exit_code, stdout_text, stderr_text).
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int                code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    });

    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const std::domain_error& e)
        {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
}
