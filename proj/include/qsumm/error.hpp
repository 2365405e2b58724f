#pragma once

#include <stdexcept>
#include <string>

namespace qsumm {

// Base of every error the library raises on bad input or configuration.
// Anything else escaping the library is an internal fault.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QSUMM_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

QSUMM_DEFINE_ERROR(EmptyCorpus);
QSUMM_DEFINE_ERROR(EmptyReferenceSet);
QSUMM_DEFINE_ERROR(DegenerateAbstract);
QSUMM_DEFINE_ERROR(InvalidHyperparameter);
QSUMM_DEFINE_ERROR(SingleClassTraining);
QSUMM_DEFINE_ERROR(DimensionMismatch);
QSUMM_DEFINE_ERROR(TooFewQuestions);
QSUMM_DEFINE_ERROR(FoldMismatch);
QSUMM_DEFINE_ERROR(FileUnreadable);
QSUMM_DEFINE_ERROR(NotBioasqShape);
QSUMM_DEFINE_ERROR(InvalidParameters);
QSUMM_DEFINE_ERROR(FormatError);

#undef QSUMM_DEFINE_ERROR

}  // namespace qsumm
