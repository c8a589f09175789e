#pragma once

// Newform coefficient files: a "# weight=.. level=.. label=.." header and
// tab-separated rows "n<TAB>a_n". Integers give an exact form; decimals
// give an inexact one.

#include "modforms.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mverify::newform_io {

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& source, std::vector<std::string> items);
  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
};

// Parse and validate. Every problem found is listed in the IngestError.
modforms::Eigenform parse_newform(std::istream& in, const std::string& source = "<stream>");
modforms::Eigenform ingest_newform(const std::string& path);

// Exact rational forms as integers, everything else as 17-digit decimals.
void serialize_newform(std::ostream& out, const modforms::Eigenform& f);
void write_newform(const std::string& path, const modforms::Eigenform& f);

}  // namespace mverify::newform_io
