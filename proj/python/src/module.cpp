#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <echelon/any_series.hpp>
#include <echelon/coefficient.hpp>
#include <echelon/settings.hpp>

namespace py = pybind11;
using namespace echelon;

namespace
{

struct PyCoefficient {
    double norm = 0;
};

// Values copied out of a core term view; nothing points back into the series.
struct PyKey {
    std::vector<int> exponents;
    std::optional<bool> flavour;
    long long degree = 0;
    std::optional<double> freq_value;
    std::string freq_error;

    double freq() const
    {
        if (!freq_value) {
            throw py::value_error(freq_error);
        }
        return *freq_value;
    }
};

struct PyTerm {
    PyCoefficient cf;
    PyKey key;
};

PyTerm to_py(const TermView &v)
{
    PyTerm t;
    t.cf.norm = v.cf_norm;
    t.key.exponents = v.key;
    t.key.flavour = v.flavour;
    t.key.degree = v.degree;
    try {
        t.key.freq_value = v.freq();
    } catch (const std::domain_error &e) {
        t.key.freq_error = e.what();
    }
    return t;
}

AnySeries power(const AnySeries &s, const py::object &exponent, std::optional<unsigned> order)
{
    Rational r;
    if (py::isinstance<py::int_>(exponent)) {
        r = Rational(exponent.cast<long>());
    } else {
        r = cf_traits<Rational>::parse(py::str(exponent).cast<std::string>());
    }
    if (order) {
        return s.pow_real(r, *order);
    }
    if (r.get_den() != 1 || sgn(r) < 0 || !r.get_num().fits_ulong_p()) {
        throw py::value_error("an order is required for exponents that are not natural numbers");
    }
    return s.pow_natural(r.get_num().get_ui());
}

std::vector<std::pair<std::string, std::optional<double>>> symbols(const SymbolSet &s)
{
    std::vector<std::pair<std::string, std::optional<double>>> out;
    for (const auto &x : s) {
        out.emplace_back(x.name, x.freq);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_echelon, m)
{
    m.doc() = "Sparse polynomial, Fourier and Poisson series";

    py::class_<PyCoefficient>(m, "Coefficient").def_readonly("norm", &PyCoefficient::norm);
    py::class_<PyKey>(m, "Key")
        .def_readonly("exponents", &PyKey::exponents)
        .def_readonly("flavour", &PyKey::flavour)
        .def_readonly("degree", &PyKey::degree)
        .def_property_readonly("freq", &PyKey::freq);
    py::class_<PyTerm>(m, "Term").def_readonly("cf", &PyTerm::cf).def_readonly("key", &PyTerm::key);

    py::class_<AnySeries>(m, "Series")
        .def_static("parse", &AnySeries::parse, py::arg("text"))
        .def_static("load", &AnySeries::load, py::arg("path"))
        .def("save", &AnySeries::save, py::arg("path"))
        .def("print", &AnySeries::print)
        .def("__str__", &AnySeries::print)
        .def_property_readonly("kind", [](const AnySeries &s) { return std::string(to_string(s.kind())); })
        .def_property_readonly("cf_type", &AnySeries::cf_name)
        .def_property_readonly("width", &AnySeries::width)
        .def_property_readonly("args", [](const AnySeries &s) { return symbols(s.args()); })
        .def_property_readonly("cargs", [](const AnySeries &s) { return symbols(s.cargs()); })
        .def("__len__", &AnySeries::size)
        .def("__add__", [](const AnySeries &a, const AnySeries &b) { return a + b; })
        .def("__sub__", [](const AnySeries &a, const AnySeries &b) { return a - b; })
        .def("__mul__", [](const AnySeries &a, const AnySeries &b) { return a * b; })
        .def("__neg__", [](const AnySeries &a) { return -a; })
        .def("__eq__", [](const AnySeries &a, const AnySeries &b) { return a == b; })
        .def("__pow__", [](const AnySeries &s, const py::object &e) { return power(s, e, std::nullopt); })
        .def("pow", &power, py::arg("exponent"), py::arg("order") = py::none())
        .def(
            "multiply",
            [](const AnySeries &a, const AnySeries &b, const std::string &strategy, std::size_t block) {
                MultiplyOptions o;
                o.strategy = parse_strategy(strategy);
                if (block > 0) {
                    o.block = block;
                }
                return multiply(a, b, o);
            },
            py::arg("other"), py::arg("strategy") = "auto", py::arg("block") = 0)
        .def("evaluate", &AnySeries::evaluate, py::arg("values"))
        .def("__call__",
             [](const AnySeries &s, const py::kwargs &kw) {
                 std::map<std::string, double> vals;
                 for (const auto &[k, v] : kw) {
                     vals[k.cast<std::string>()] = v.cast<double>();
                 }
                 return s.evaluate(vals);
             })
        .def("filter", [](const AnySeries &s, const py::args &preds) {
            std::vector<TermPredicate> ps;
            for (const auto &p : preds) {
                auto f = py::reinterpret_borrow<py::function>(p);
                ps.push_back([f](const TermView &v) { return py::bool_(f(to_py(v))).cast<bool>(); });
            }
            return s.filter(ps);
        });

    m.def("set_eps", &set_eps, py::arg("value"));
}
