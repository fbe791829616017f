#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gfw/error.hpp"
#include "gfw/theorems/theorems.hpp"

namespace py = pybind11;
using namespace gfw;

namespace {

py::tuple interval(const CertReal& v) { return py::make_tuple(v.mid_double(), v.rad_double()); }

py::object opt_interval(const std::optional<CertReal>& v) { return v ? py::object(interval(*v)) : py::none(); }

py::object opt_int(const std::optional<Integer>& v) {
    if (!v) return py::none();
    return py::int_(py::str(gfw::to_string(*v)));
}

CanonicalChoice choice_for(const GlobalField& K, const std::optional<std::string>& p0, std::optional<int> pinf) {
    CanonicalChoice c;
    if (p0) c.p0 = BasePlace::parse(K, *p0);
    if (pinf) c.pinf = *pinf - 1;
    return c;
}

py::dict report_dict(const VerificationReport& r) {
    py::dict d;
    d["statement"] = r.statement;
    d["field"] = r.field;
    d["divisor"] = r.divisor;
    d["choices"] = r.choices;
    d["deg"] = opt_interval(r.deg);
    d["h0"] = opt_int(r.h0);
    d["h0_dual"] = opt_int(r.h0_dual);
    d["h0_max"] = opt_int(r.h0_max);
    d["h0_dual_max"] = opt_int(r.h0_dual_max);
    d["ratio"] = opt_interval(r.ratio);
    d["C_theorem"] = opt_interval(r.c_theorem);
    d["C_remark"] = opt_interval(r.c_remark);
    d["B"] = opt_interval(r.b);
    d["i"] = opt_interval(r.i_value);
    d["verdict"] = to_string(r.verdict);
    d["verdict_theorem"] = r.verdict_theorem ? py::object(py::str(to_string(*r.verdict_theorem))) : py::none();
    d["margin"] = opt_interval(r.margin);
    d["note"] = r.note;
    d["csv"] = to_csv_row(r);
    return d;
}

}  // namespace

PYBIND11_MODULE(_gfw, m) {
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
    py::register_exception<TooLargeError>(m, "TooLargeError", PyExc_RuntimeError);

    py::class_<GlobalField>(m, "Field")
        .def(py::init([](const std::string& lit) { return GlobalField::parse(lit); }), py::arg("literal"))
        .def_property_readonly("degree", &GlobalField::degree)
        .def_property_readonly("characteristic", &GlobalField::characteristic)
        .def_property_readonly("is_number_field", &GlobalField::is_number_field)
        .def_property_readonly("s_counts", [](const GlobalField& K) { return s_counts(K); })
        .def_property_readonly("discriminant",
                               [](const GlobalField& K) { return py::int_(py::str(gfw::to_string(K.discriminant()))); })
        .def_property_readonly("genus", &GlobalField::genus)
        .def("__str__", &GlobalField::to_string)
        .def("__repr__", [](const GlobalField& K) { return "Field('" + K.to_string() + "')"; })
        .def("__eq__", [](const GlobalField& a, const GlobalField& b) { return a == b; });

    py::class_<Divisor>(m, "Divisor")
        .def(py::init([](const GlobalField& K, const std::string& lit) { return Divisor::parse(K, lit); }),
             py::arg("field"), py::arg("literal") = "0")
        .def("degree", [](const Divisor& d, int prec) { return interval(degree(d, prec)); },
             py::arg("precision") = kDefaultPrecision)
        .def("degree_exact",
             [](const Divisor& d) -> py::object {
                 DegreeValue v = degree_value(d);
                 if (!v.is_exact()) return py::none();
                 return py::str(v.exact.to_string());
             })
        .def("__add__", [](const Divisor& a, const Divisor& b) { return a + b; })
        .def("__sub__", [](const Divisor& a, const Divisor& b) { return a - b; })
        .def("__neg__", [](const Divisor& a) { return -a; })
        .def("__str__", &Divisor::to_string)
        .def("__repr__", [](const Divisor& d) { return "Divisor('" + d.to_string() + "')"; });

    m.def("canonical_divisor",
          [](const GlobalField& K, std::optional<std::string> p0, std::optional<int> pinf) {
              return canonical_divisor(K, choice_for(K, p0, pinf));
          },
          py::arg("field"), py::arg("p0") = py::none(), py::arg("pinf") = py::none(),
          "omega' for the given base place P0 and 1-based archimedean index");

    m.def("h0",
          [](const Divisor& d, bool elements) {
              H0Options opt;
              opt.want_elements = elements;
              std::optional<MultipleSet> res;
              {
                  py::gil_scoped_release release;
                  res = compute_h0(d, opt);
              }
              const MultipleSet& s = *res;
              py::dict out;
              out["h0"] = opt_int(s.h0);
              out["h0_max"] = opt_int(s.h0_max);
              out["exact"] = s.certification == Certification::Exact;
              if (s.elements) {
                  py::list l;
                  for (const auto& e : *s.elements) l.append(e.to_string());
                  out["elements"] = l;
              }
              return out;
          },
          py::arg("divisor"), py::arg("elements") = false);

    m.def("h0_oracle", [](const Divisor& d) { return opt_int(h0_oracle(d)); }, py::arg("divisor"));

    m.def("constants",
          [](int s1, int s2) {
              ConstantsBundle c = constants(s1, s2);
              py::dict d;
              for (auto [k, v] : {std::pair{"C_theorem", &c.c_theorem}, {"C_remark", &c.c_remark}, {"B", &c.b}}) {
                  d[k] = py::make_tuple(v->to_string(), v->evaluate().mid_double());
              }
              d["C_equal"] = c.c_theorem == c.c_remark;
              return d;
          },
          py::arg("s1"), py::arg("s2"));

    m.def("verify_rr1",
          [](const Divisor& d, std::optional<std::string> p0, std::optional<int> pinf, int prec) {
              CanonicalChoice ch = choice_for(d.field(), p0, pinf);
              std::optional<VerificationReport> r;
              {
                  py::gil_scoped_release release;
                  r = verify_rr_sandwich(d, ch, prec);
              }
              return report_dict(*r);
          },
          py::arg("divisor"), py::arg("p0") = py::none(), py::arg("pinf") = py::none(),
          py::arg("precision") = kDefaultPrecision);

    m.def("verify_rr2",
          [](const Divisor& d, const std::string& eps, std::optional<std::string> p0, std::optional<int> pinf,
             int prec) {
              CanonicalChoice ch = choice_for(d.field(), p0, pinf);
              Rational e = parse_rational(eps);
              std::optional<VerificationReport> r;
              {
                  py::gil_scoped_release release;
                  r = verify_rr_point(d, e, ch, prec);
              }
              return report_dict(*r);
          },
          py::arg("divisor"), py::arg("eps") = "0.05", py::arg("p0") = py::none(), py::arg("pinf") = py::none(),
          py::arg("precision") = kDefaultPrecision);

    m.def("verify_rh",
          [](const GlobalField& top, const GlobalField& bottom, int prec) {
              return report_dict(verify_rh(Extension(top, bottom), {}, {}, prec));
          },
          py::arg("top"), py::arg("bottom"), py::arg("precision") = kDefaultPrecision);
}
