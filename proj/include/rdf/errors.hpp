#pragma once

#include <stdexcept>
#include <string>

namespace rdf {

// Base for every failure raised by the library. The CLI maps these onto its
// exit-code contract.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define RDF_DEFINE_ERROR(Name)                                                 \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

// core algebra
RDF_DEFINE_ERROR(NonRealResult);
RDF_DEFINE_ERROR(ConjugacyViolation);

// radial solver
RDF_DEFINE_ERROR(InvalidLabel);
RDF_DEFINE_ERROR(SupercriticalCoupling);
RDF_DEFINE_ERROR(NoConvergence);
RDF_DEFINE_ERROR(GridTooCoarse);
RDF_DEFINE_ERROR(OutOfGrid);

// potentials / perturbation
RDF_DEFINE_ERROR(GridMismatch);
RDF_DEFINE_ERROR(ExpansionDomain);
RDF_DEFINE_ERROR(NotStationary);
RDF_DEFINE_ERROR(PreconditionError);

#undef RDF_DEFINE_ERROR

} // namespace rdf
