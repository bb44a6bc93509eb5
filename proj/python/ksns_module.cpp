#include <pybind11/pybind11.h>
PYBIND11_MODULE(_ksns, m) { m.doc() = "placeholder"; }
