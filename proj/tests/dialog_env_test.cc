// Copyright 2026 The scddq Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "scddq/curriculum.h"
#include "scddq/dialog_env.h"
#include "scddq/dialog_state.h"
#include "scddq/errors.h"
#include "scddq/knowledge_base.h"
#include "scddq/user_goal.h"
#include "scddq/user_simulator.h"

namespace scddq {
namespace {

MovieRecord Record(const std::string& movie, const std::string& city, const std::string& theater,
                   const std::string& start, const std::string& date, const std::string& people) {
  MovieRecord r;
  r.values = {{Slot::kMovieName, movie},   {Slot::kCity, city},
              {Slot::kState, "wa"},        {Slot::kTheater, theater},
              {Slot::kTheaterChain, "amc"}, {Slot::kDate, date},
              {Slot::kStartTime, start},   {Slot::kPrice, "$12"},
              {Slot::kVideoFormat, "2d"},  {Slot::kZip, "98101"},
              {Slot::kNumberOfPeople, people}};
  return r;
}

// Showings plus decoys that share some values.
KnowledgeBase PaperKb() {
  return KnowledgeBase({
      Record("race", "seattle", "regal meridian 16", "7:00 pm", "tomorrow", "2"),
      Record("race", "seattle", "amc pacific place 11 theater", "10:00 pm", "tomorrow", "2"),
      Record("zootopia", "seattle", "cinerama", "9:30 pm", "tonight", "3"),
      Record("zootopia", "bellevue", "lincoln square", "8:00 pm", "tonight", "3"),
  });
}

UserGoal RaceGoal() {
  UserGoal g;
  g.request_slots = {Slot::kTicket};
  g.inform_slots = {{Slot::kCity, "Seattle"},        {Slot::kNumberOfPeople, "2"},
                    {Slot::kTheater, "amc pacific place 11 theater"},
                    {Slot::kStartTime, "10:00 pm"}, {Slot::kDate, "tomorrow"},
                    {Slot::kMovieName, "race"}};
  return g;
}

UserGoal ZootopiaGoal() {
  UserGoal g;
  g.request_slots = {Slot::kTicket, Slot::kTheater, Slot::kStartTime};
  g.inform_slots = {{Slot::kNumberOfPeople, "3"}, {Slot::kDate, "tonight"},
                    {Slot::kMovieName, "zootopia"}};
  return g;
}

double Sum(const Transcript& t) {
  double s = 0.0;
  for (const auto& e : t) s += e.reward;
  return s;
}

TEST_CASE("reset opens with the highest-priority request and the movie name") {
  const KnowledgeBase kb = PaperKb();
  UserSimulator sim(kb);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const DialogAct first = sim.Reset(ZootopiaGoal(), seed);
    CHECK(first.intent == Intent::kRequest);
    CHECK(first.request_slots == std::set<Slot>{Slot::kStartTime});
    CHECK(first.inform_slots.count(Slot::kMovieName));
    CHECK(first.inform_slots.size() >= 1);
    CHECK(first.inform_slots.size() <= 3);
    CHECK(sim.outstanding() == ZootopiaGoal().request_slots);
  }
  const DialogAct ticket = sim.Reset(RaceGoal(), 3);
  CHECK(ticket.request_slots == std::set<Slot>{Slot::kTicket});
  CHECK_FALSE(ticket.inform_slots.empty());
  CHECK(sim.Reset(ZootopiaGoal(), 42) == sim.Reset(ZootopiaGoal(), 42));
}

TEST_CASE("unsatisfiable goal is rejected at reset") {
  const KnowledgeBase kb = PaperKb();
  UserSimulator sim(kb);
  UserGoal g = RaceGoal();
  g.inform_slots[Slot::kCity] = "portland";
  CHECK_THROWS_AS(sim.Reset(g, 1), EnvironmentSetupError);
}

TEST_CASE("user informs a requested constraint") {
  const KnowledgeBase kb = PaperKb();
  UserSimulator sim(kb);
  sim.Reset(RaceGoal(), 1);
  const StepOutcome out = sim.Step(DialogAct::Request(Slot::kMovieName));
  CHECK(out.user_act.intent == Intent::kInform);
  CHECK(out.user_act.inform_slots == SlotValues{{Slot::kMovieName, "race"}});
  CHECK(out.reward == -1.0);
  CHECK_FALSE(out.done);
  CHECK_FALSE(out.success.has_value());
  CHECK(sim.Step(DialogAct::Request(Slot::kVideoFormat)).user_act.intent == Intent::kNotSure);
  CHECK(sim.Step(DialogAct::Plain(Intent::kConfirmQuestion)).user_act.intent ==
        Intent::kConfirmAnswer);
}

TEST_CASE("wrong constraint values are denied with the correction") {
  const KnowledgeBase kb = PaperKb();
  UserSimulator sim(kb);
  sim.Reset(RaceGoal(), 1);
  const StepOutcome out = sim.Step(DialogAct::Inform(Slot::kStartTime, "7:00 pm"));
  CHECK(out.user_act.intent == Intent::kDeny);
  CHECK(out.user_act.inform_slots.at(Slot::kStartTime) == "10:00 pm");
}

TEST_CASE("booking after ten agent turns earns 70") {
  const KnowledgeBase kb = PaperKb();
  DialogEnvironment env(kb, ActionRoster::Default());
  env.Reset(RaceGoal(), 9);
  double total = 0.0;
  for (Slot s : kRuleAgentAgenda) total += env.StepTemplate(DialogAct::Request(s)).outcome.reward;
  for (int i = 0; i < 3; ++i) {
    total += env.StepTemplate(DialogAct::Plain(Intent::kThanks)).outcome.reward;
  }
  const auto last = env.StepTemplate(DialogAct::Inform(Slot::kTaskComplete));
  total += last.outcome.reward;
  CHECK(env.simulator().agent_turns() == 10);
  CHECK(last.outcome.done);
  CHECK(last.outcome.success == true);
  CHECK(last.agent_act.inform_slots.at(Slot::kTaskComplete) == "1");
  CHECK(total == 70.0);
  CHECK(last.outcome.user_act.intent == Intent::kThanks);
}

TEST_CASE("turn limit forces failure with -41 on the last step") {
  const KnowledgeBase kb = PaperKb();
  UserSimulator sim(kb);
  sim.Reset(RaceGoal(), 2);
  StepOutcome out;
  for (int t = 0; t < 40; ++t) {
    REQUIRE_FALSE(sim.done());
    out = sim.Step(DialogAct::Plain(Intent::kThanks));
  }
  CHECK(out.done);
  CHECK(out.success == false);
  CHECK(out.reward == -41.0);
  CHECK(out.user_act.intent == Intent::kClosing);
  CHECK(Sum(sim.transcript()) == -80.0);
  CHECK_THROWS_AS(sim.Step(DialogAct::Plain(Intent::kThanks)), ContractViolation);
}

TEST_CASE("fresh state encodes the user request intent") {
  const KnowledgeBase kb = PaperKb();
  DialogEnvironment env(kb, ActionRoster::Default());
  env.Reset(ZootopiaGoal(), 4);
  const StateVector v = env.EncodedState();
  REQUIRE(v.size() == 129);
  CHECK(v.segment(0, 11).sum() == 1.0);
  CHECK(v[IntentIndex(Intent::kRequest)] == 1.0);
  CHECK(v.segment(43, 11).sum() == 0.0);  // no agent act yet
  CHECK(v[86] == 1.0);                    // turn 0
  CHECK(EncodeState(env.state()) == v);
  for (Eigen::Index i = 0; i < v.size(); ++i) CHECK((v[i] == 0.0 || v[i] == 1.0));
}

TEST_CASE("mid-dialog encoding matches a hand computation") {
  DialogState s;
  s.turn = 3;
  s.last_user_act = DialogAct::Inform(Slot::kCity, "seattle");
  s.last_agent_act = DialogAct::Request(Slot::kCity);
  s.user_informed = {{Slot::kCity, "seattle"}, {Slot::kMovieName, "race"}};
  s.user_requested_outstanding = {Slot::kTicket};
  s.agent_informed = {{Slot::kStartTime, "10:00 pm"}};
  s.agent_requested = {Slot::kCity, Slot::kMovieName};
  s.kb_match_count = 1;
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(129);
  expected[1] = 1;        // user intent inform
  expected[11 + 0] = 1;   // user informed city
  expected[11 + 5] = 1;   // user informed moviename
  expected[27 + 13] = 1;  // outstanding ticket
  expected[43 + 0] = 1;   // agent intent request
  expected[54 + 8] = 1;   // agent informed starttime
  expected[70 + 0] = 1;   // agent requested city
  expected[70 + 5] = 1;   // agent requested moviename
  expected[86 + 3] = 1;   // turn 3
  expected[126 + 1] = 1;  // exactly one match
  CHECK(EncodeState(s) == expected);
  s.turn = 57;
  s.kb_match_count = 9;
  const StateVector late = EncodeState(s);
  CHECK(late[86 + 39] == 1.0);
  CHECK(late[128] == 1.0);
}

TEST_CASE("rule-based agent acts") {
  DialogState empty;
  CHECK(RuleBasedAgentAct(empty) == DialogAct::Request(Slot::kMovieName));
  DialogState full;
  for (Slot s : kRuleAgentAgenda) full.user_informed[s] = "x";
  CHECK(RuleBasedAgentAct(full) == DialogAct::Inform(Slot::kTaskComplete));
  full.user_requested_outstanding = {Slot::kTheater, Slot::kTicket};
  CHECK(RuleBasedAgentAct(full) == DialogAct::Inform(Slot::kTheater));
}

TEST_CASE("rule-based agent books the race showing") {
  const KnowledgeBase kb = PaperKb();
  DialogEnvironment env(kb, ActionRoster::Default());
  env.Reset(RaceGoal(), 11);
  std::vector<DialogAct> agent_acts;
  while (!env.done()) {
    const auto step = env.StepTemplate(RuleBasedAgentAct(env.state()));
    agent_acts.push_back(step.agent_act);
  }
  CHECK(env.simulator().transcript().back().act.intent == Intent::kThanks);
  REQUIRE(agent_acts.size() <= 7);
  CHECK(agent_acts.back().inform_slots.at(Slot::kTaskComplete) == "1");
  // Requests follow the agenda order, skipping what the user already said.
  size_t pos = 0;
  for (size_t i = 0; i + 1 < agent_acts.size(); ++i) {
    REQUIRE(agent_acts[i].intent == Intent::kRequest);
    const Slot s = *agent_acts[i].request_slots.begin();
    while (pos < kRuleAgentAgenda.size() && kRuleAgentAgenda[pos] != s) ++pos;
    CHECK(pos < kRuleAgentAgenda.size());
  }
  CHECK(JudgeSuccess(RaceGoal(), env.simulator().transcript(), kb));
}

TEST_CASE("rule-based agent solves every easy goal") {
  const KnowledgeBase kb = GenerateKb(7, 991);
  const GoalBuffers buffers = BuildBuffers(GenerateGoalSet(kb, DefaultGoalCounts(), 7));
  REQUIRE(buffers.easy.size() == 61);
  DialogEnvironment env(kb, ActionRoster::Default());
  uint64_t seed = 0;
  for (const auto& goal : buffers.easy) {
    env.Reset(goal, seed++);
    StepOutcome last;
    while (!env.done()) last = env.StepTemplate(RuleBasedAgentAct(env.state())).outcome;
    CHECK(last.success == true);
    CHECK(env.simulator().agent_turns() <= 16);
  }
}

TEST_CASE("judge_success on hand-built transcripts") {
  const KnowledgeBase kb = PaperKb();
  const UserGoal goal = RaceGoal();
  auto user = [](const DialogAct& a) { return TranscriptEntry{0, Speaker::kUser, a, 0.0}; };
  auto agent = [](const DialogAct& a) { return TranscriptEntry{0, Speaker::kAgent, a, 0.0}; };
  Transcript t = {
      user(DialogAct::Request(Slot::kTicket, {{Slot::kMovieName, "race"},
                                              {Slot::kStartTime, "10:00 pm"}})),
      agent(DialogAct::Request(Slot::kMovieName)),
      user(DialogAct::Inform(Slot::kMovieName, "race")),
      agent(DialogAct::Inform(Slot::kTaskComplete, "1")),
  };
  CHECK(JudgeSuccess(goal, t, kb));
  Transcript contradicted = t;
  contradicted.back() = agent(DialogAct::Inform(Slot::kTaskComplete, "0"));
  CHECK_FALSE(JudgeSuccess(goal, contradicted, kb));
  Transcript no_booking(t.begin(), t.end() - 1);
  CHECK_FALSE(JudgeSuccess(goal, no_booking, kb));

  const UserGoal middle = ZootopiaGoal();
  Transcript m = {
      user(DialogAct::Request(Slot::kStartTime, {{Slot::kMovieName, "zootopia"}})),
      agent(DialogAct::Inform(Slot::kStartTime, "9:30 pm")),
      agent(DialogAct::Inform(Slot::kTaskComplete, "2")),
  };
  CHECK_FALSE(JudgeSuccess(middle, m, kb));  // theater never informed
  m.insert(m.end() - 1, agent(DialogAct::Inform(Slot::kTheater, "cinerama")));
  CHECK(JudgeSuccess(middle, m, kb));
  DialogAct deny = DialogAct::Plain(Intent::kDeny);
  deny.request_slots = {Slot::kTheater};
  m.insert(m.end() - 1, user(deny));
  CHECK_FALSE(JudgeSuccess(middle, m, kb));  // the user rejected that theater
}

TEST_CASE("episode returns are 2L - T or -L - T") {
  const KnowledgeBase kb = GenerateKb(7, 991);
  const auto goals = GenerateGoalSet(kb, DefaultGoalCounts(), 7);
  DialogEnvironment env(kb, ActionRoster::Default());
  Rng rng(17);
  int successes = 0;
  for (int ep = 0; ep < 300; ++ep) {
    env.Reset(goals[rng.Below(goals.size())], rng.NextU64());
    double total = 0.0;
    StepOutcome last;
    const bool rule = ep % 2 == 0;
    while (!env.done()) {
      const auto step = rule ? env.StepTemplate(RuleBasedAgentAct(env.state()))
                             : env.StepAction(static_cast<int>(rng.Below(29)));
      total += step.outcome.reward;
      last = step.outcome;
    }
    const int t = env.simulator().agent_turns();
    CHECK(t <= 40);
    REQUIRE(last.success.has_value());
    successes += *last.success ? 1 : 0;
    CHECK(total == (*last.success ? 80.0 - t : -40.0 - t));
  }
  CHECK(successes > 0);
  CHECK(successes < 300);
}

TEST_CASE("user simulator is deterministic given the seed") {
  const KnowledgeBase kb = GenerateKb(7, 300);
  const auto goals = GenerateGoalSet(kb, {{3, 5}}, 2);
  auto run = [&](uint64_t seed) {
    DialogEnvironment env(kb, ActionRoster::Default());
    env.Reset(goals[2], seed);
    Rng rng(99);
    while (!env.done()) env.StepAction(static_cast<int>(rng.Below(29)));
    std::ostringstream out;
    WriteTranscriptJsonl(env.simulator().transcript(), out);
    return out.str();
  };
  CHECK(run(5) == run(5));
}

TEST_CASE("transcript log is one JSON object per act") {
  const KnowledgeBase kb = PaperKb();
  DialogEnvironment env(kb, ActionRoster::Default());
  env.Reset(RaceGoal(), 11);
  while (!env.done()) env.StepTemplate(RuleBasedAgentAct(env.state()));
  std::ostringstream out;
  WriteTranscriptJsonl(env.simulator().transcript(), out);
  std::istringstream in(out.str());
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"turn", "speaker", "intent", "inform_slots", "request_slots", "reward"}) {
      CHECK(j.contains(key));
    }
    ++n;
  }
  CHECK(n == env.simulator().transcript().size());
}

}  // namespace
}  // namespace scddq
