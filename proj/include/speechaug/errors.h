// speechaug/errors.h

// Copyright 2026  The speechaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPEECHAUG_ERRORS_H_
#define SPEECHAUG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace speechaug {

enum class ErrorKind {
  kMalformedWav,
  kMalformedDump,
  kUnsupportedFormat,
  kIo,
  kManifestParse,
  kEmptySignal,
  kSignalTooShort,
  kBadParams,
  kSilentSignal,
  kEmptyCorpus,
  kMissingHypothesis,
  kConfig,
};

const char *ErrorKindName(ErrorKind kind);

/// Every recoverable failure in the library is reported as an Error; the
/// kind lets callers (the CLI in particular) map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace speechaug

#endif  // SPEECHAUG_ERRORS_H_
