#include "decomp/model.hpp"

#include <gtest/gtest.h>

#include "support/test_util.hpp"

using decomp::CallKind;
using decomp::Decomposition;
using decomp::ErrorKind;
using decomp::MonolithGraph;
using decomp::ValidatedPartition;
using testutil::error_kind_of;
using testutil::g4;
using testutil::g4_pair;

TEST(GraphTest, BuildsAndIndexesClasses) {
  const MonolithGraph g = g4();
  EXPECT_EQ(g.name(), "g4");
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.index_of("A"), 0u);
  EXPECT_EQ(g.index_of("D"), 3u);
  EXPECT_EQ(g.id_of(2), "C");
  EXPECT_TRUE(g.contains("B"));
  EXPECT_FALSE(g.contains("E"));
  EXPECT_FALSE(g.has_runtime_edges());
  ASSERT_EQ(g.indexed_edges().size(), 3u);
  EXPECT_EQ(g.indexed_edges()[0].src, 0u);
  EXPECT_EQ(g.indexed_edges()[0].dst, 1u);
}

TEST(GraphTest, RejectsDuplicateClassIds) {
  EXPECT_EQ(error_kind_of([] {
              MonolithGraph("g", {{"A", {}}, {"A", {}}}, {});
            }),
            ErrorKind::duplicate_class);
}

TEST(GraphTest, RejectsEmptyClassId) {
  EXPECT_EQ(error_kind_of([] { MonolithGraph("g", {{"", {}}}, {}); }),
            ErrorKind::bad_spec);
}

TEST(GraphTest, RejectsUnknownEdgeEndpoints) {
  EXPECT_EQ(error_kind_of([] {
              MonolithGraph("g", {{"A", {}}},
                            {{"A", "B", CallKind::static_call, 1}});
            }),
            ErrorKind::unknown_edge_endpoint);
  EXPECT_EQ(error_kind_of([] {
              MonolithGraph("g", {{"A", {}}},
                            {{"X", "A", CallKind::static_call, 1}});
            }),
            ErrorKind::unknown_edge_endpoint);
}

TEST(GraphTest, RejectsDuplicateEdgesOfSameKind) {
  EXPECT_EQ(error_kind_of([] {
              MonolithGraph("g", {{"A", {}}, {"B", {}}},
                            {{"A", "B", CallKind::static_call, 1},
                             {"A", "B", CallKind::static_call, 2}});
            }),
            ErrorKind::duplicate_edge);
}

TEST(GraphTest, AllowsSameEndpointsWithDifferentKinds) {
  const MonolithGraph g("g", {{"A", {}}, {"B", {}}},
                        {{"A", "B", CallKind::static_call, 1},
                         {"A", "B", CallKind::runtime_call, 7}});
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_TRUE(g.has_runtime_edges());
}

TEST(GraphTest, AllowsSelfEdges) {
  const MonolithGraph g("g", {{"A", {}}},
                        {{"A", "A", CallKind::static_call, 3}});
  EXPECT_EQ(g.indexed_edges()[0].src, g.indexed_edges()[0].dst);
}

TEST(GraphTest, RejectsNonPositiveCounts) {
  EXPECT_EQ(error_kind_of([] {
              MonolithGraph("g", {{"A", {}}, {"B", {}}},
                            {{"A", "B", CallKind::static_call, 0}});
            }),
            ErrorKind::bad_count);
}

TEST(GraphTest, UnknownClassLookupThrows) {
  const MonolithGraph g = g4();
  EXPECT_EQ(error_kind_of([&] { g.index_of("Z"); }),
            ErrorKind::unknown_class);
}

TEST(ValidateTest, AcceptsAValidPartition) {
  const MonolithGraph g = g4();
  const ValidatedPartition p = validate_decomposition(g, g4_pair());
  EXPECT_EQ(p.service_count(), 2u);
  EXPECT_EQ(p.class_count(), 4u);
  EXPECT_EQ(p.service_of(g.index_of("A")), 0u);
  EXPECT_EQ(p.service_of(g.index_of("D")), 1u);
  EXPECT_EQ(p.size_of(0), 2u);
  EXPECT_EQ(p.members(1), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(p.service_names()[0], "s1");
}

TEST(ValidateTest, IsIdempotent) {
  const MonolithGraph g = g4();
  const Decomposition d = g4_pair();
  EXPECT_EQ(validate_decomposition(g, d), validate_decomposition(g, d));
}

TEST(ValidateTest, RejectsUnknownClass) {
  Decomposition d = g4_pair();
  d.services[0].classes.push_back("Z");
  EXPECT_EQ(error_kind_of([&] { validate_decomposition(g4(), d); }),
            ErrorKind::unknown_class);
}

TEST(ValidateTest, RejectsDuplicateAssignmentWithinService) {
  Decomposition d = g4_pair();
  d.services[0].classes = {"A", "A"};
  EXPECT_EQ(error_kind_of([&] { validate_decomposition(g4(), d); }),
            ErrorKind::duplicate_assignment);
}

TEST(ValidateTest, RejectsDuplicateAssignmentAcrossServices) {
  Decomposition d = g4_pair();
  d.services[1].classes.push_back("A");
  EXPECT_EQ(error_kind_of([&] { validate_decomposition(g4(), d); }),
            ErrorKind::duplicate_assignment);
}

TEST(ValidateTest, RejectsEmptyService) {
  Decomposition d = g4_pair();
  d.services.push_back({"s3", {}});
  EXPECT_EQ(error_kind_of([&] { validate_decomposition(g4(), d); }),
            ErrorKind::empty_service);
}

TEST(ValidateTest, RejectsMissingClass) {
  Decomposition d = g4_pair();
  d.services[1].classes = {"C"};  // D left out
  EXPECT_EQ(error_kind_of([&] { validate_decomposition(g4(), d); }),
            ErrorKind::missing_class);
}

TEST(AssignmentTest, BuildsServicesInFirstUseOrder) {
  const MonolithGraph g = g4();
  // A and C share slot 7, B has slot 2, D slot 0: service order follows the
  // smallest class index of each slot.
  const Decomposition d =
      decomp::decomposition_from_assignment(g, {7, 2, 7, 0}, "x");
  EXPECT_EQ(d.tool, "x");
  EXPECT_EQ(d.system, "g4");
  ASSERT_EQ(d.services.size(), 3u);
  EXPECT_EQ(d.services[0].name, "s1");
  EXPECT_EQ(d.services[0].classes, (std::vector<std::string>{"A", "C"}));
  EXPECT_EQ(d.services[1].classes, (std::vector<std::string>{"B"}));
  EXPECT_EQ(d.services[2].classes, (std::vector<std::string>{"D"}));
}

TEST(AssignmentTest, RoundTripsThroughValidate) {
  const MonolithGraph g = g4();
  const Decomposition d =
      decomp::decomposition_from_assignment(g, {0, 0, 1, 1}, "pair");
  const ValidatedPartition p = validate_decomposition(g, d);
  EXPECT_EQ(p.service_count(), 2u);
  EXPECT_EQ(p.members(0), (std::vector<std::size_t>{0, 1}));
}
