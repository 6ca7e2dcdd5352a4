#pragma once

#include "sgeom/forms.hpp"

#include <stdexcept>

namespace sgeom {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_, column_;
};

// Grammar: sums of products with explicit '*', '/' by units, '^' with an integer
// exponent for powers; '^' followed by a non-number is the exterior product.
// Identifiers name generators; 'dNAME' or 'd(NAME)' is the differential of NAME.
Form parse_form(std::string_view text, const ChartPtr &chart, int line = 1, int column = 1);
SuperElement parse_element(std::string_view text, const ChartPtr &chart, int line = 1, int column = 1);

} // namespace sgeom
