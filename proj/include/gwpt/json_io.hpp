#pragma once

#include <json.hpp>

#include "gwpt/poset.hpp"
#include "gwpt/series.hpp"

namespace gwpt {

// All integers and rationals cross the wire as decimal strings ("p/q" for
// rationals), so arbitrary-precision values survive round trips.
using json = nlohmann::ordered_json;

json to_json(const Rational &r);
Rational rational_from_json(const json &j);

json to_json(const GaussianRational &z);
GaussianRational gaussian_from_json(const json &j);

json to_json(const LatticeVector &v);
LatticeVector lattice_vector_from_json(const json &j);

json to_json(const IntegerMatrix &m);
IntegerMatrix integer_matrix_from_json(const json &j);

json to_json(const RationalPoint &p);
RationalPoint rational_point_from_json(const json &j);

json to_json(const ElementaryGeometry &g);
ElementaryGeometry geometry_from_json(const json &j);

json to_json(const Star &s);
Star star_from_json(const json &j);

json to_json(const ChowOneComplex &c);
ChowOneComplex complex_from_json(const json &j);

json to_json(const TruncatedULaurent &s);
TruncatedULaurent u_series_from_json(const json &j);

json to_json(const QForm &f);
QForm q_form_from_json(const json &j);

json to_json(const GWSeries &s);
GWSeries gw_series_from_json(const json &j);

json to_json(const PTSeries &s);
PTSeries pt_series_from_json(const json &j);

json to_json(const DegenerationCatalog &c);

json to_json(const PartitionVector &mu);
PartitionVector partition_vector_from_json(const json &j);

}  // namespace gwpt
