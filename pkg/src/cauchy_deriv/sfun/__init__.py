"""Special functions and the catalog of test functions."""

from .catalog import CatalogEntry, UnknownFunctionError, catalog, lookup, names
from .lambert import lambert_w0, lambert_w0_complex
from .loggamma import digamma_complex, log_gamma_complex, log_rgamma

__all__ = ["CatalogEntry", "UnknownFunctionError", "catalog", "lookup", "names", "lambert_w0",
           "lambert_w0_complex", "log_gamma_complex", "log_rgamma", "digamma_complex"]
