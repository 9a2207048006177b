#pragma once

#include <memory>
#include <string>

#include "koopnet/io.hpp"
#include "koopnet/koopman.hpp"

namespace fixture {

inline koopnet::KoopmanRep on_counting(koopnet::GAction action) {
  const std::size_t n = action.num_points();
  return koopnet::KoopmanRep(std::make_shared<const koopnet::GAction>(std::move(action)),
                             std::make_shared<const koopnet::InvariantMeasure>(koopnet::counting_measure(n)));
}

inline koopnet::KoopmanRep regular(koopnet::FiniteGroup G) {
  return on_counting(koopnet::regular_action(std::make_shared<const koopnet::FiniteGroup>(std::move(G))));
}

inline koopnet::io::GroupDocument d4_document(const std::string& data_dir) {
  return koopnet::io::load_group_file(data_dir + "/d4.json");
}

inline koopnet::KoopmanRep d4_regular(const std::string& data_dir) {
  return on_counting(koopnet::regular_action(d4_document(data_dir).group));
}

inline koopnet::KoopmanRep d4_square(const std::string& data_dir) {
  const auto doc = d4_document(data_dir);
  return on_counting(koopnet::io::bind_action(doc.group, *doc.action));
}

inline koopnet::KoopmanRep trivial_on(std::size_t points) {
  return on_counting(koopnet::trivial_action(std::make_shared<const koopnet::FiniteGroup>(koopnet::build_cyclic(1)), points));
}

}  // namespace fixture
