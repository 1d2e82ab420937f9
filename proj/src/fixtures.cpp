// SPDX-License-Identifier: Apache-2.0
#include "scanforge/fixtures.hpp"

#include <string>

namespace scanforge {

Netlist zero_cloud_netlist() {
  return parse_netlist(
      "module zero_cloud\n"
      "input a\n"
      "output q2\n"
      "dff f1 q1 a\n"
      "dff f2 q2 q1\n"
      "endmodule\n");
}

Netlist nand_chain_netlist(std::size_t length) {
  std::string text = "module nand_chain" + std::to_string(length) + "\ninput a b\noutput y\n";
  auto q = [](std::size_t k) { return "q" + std::to_string(k); };
  for (std::size_t k = 1; k <= length; ++k) {
    std::string left = k == 1 ? "a" : q(k - 1);
    std::string right = k == length ? "b" : q(k + 1);
    text += "gate n" + std::to_string(k) + " NAND2 d" + std::to_string(k) + " " + left + " " + right + "\n";
  }
  text += "gate ny NAND2 y " + q(length) + " a\n";
  for (std::size_t k = 1; k <= length; ++k)
    text += "dff f" + std::to_string(k) + " " + q(k) + " d" + std::to_string(k) + "\n";
  text += "endmodule\n";
  return parse_netlist(text);
}

}  // namespace scanforge
