#include <algorithm>
#include <cstddef>
#include <deque>
#include <list>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace corpus {

int Reduce0(const std::vector<int>& items, int limit) {
  int acc = 0;
  for (const auto& x : items) {
    if (x > limit) acc += x;
  }
  return acc;
}

long Reduce1(const std::list<long>& items, long limit) {
  long acc = 0L;
  auto it = items.begin();
  while (it != items.end()) {
    acc += *it;
    ++it;
  }
  return acc;
}

std::size_t Reduce2(const std::unordered_set<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  for (const auto& x : items) {
    switch (static_cast<int>(x) % 3) {
      case 0: acc += x; break;
      default: continue;
    }
  }
  return acc;
}

long Reduce3(const std::deque<long>& items, long limit) {
  long acc = 0L;
  try {
    for (const auto& x : items) acc += x * limit;
  } catch (...) {
    acc = 0L;
  }
  return acc;
}

std::size_t Reduce4(const std::set<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  std::string label = "n";
  for (const auto& x : items) {
    if (x < limit) { label += "+"; } else { break; }
  }
  acc += label.size();
  return acc;
}

long Reduce5(const std::vector<long>& items, long limit) {
  long acc = 0L;
  do {
    acc += limit;
  } while (acc < limit * 4);
  for (const auto& x : items) acc -= x;
  return acc;
}

std::size_t Reduce6(const std::list<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  std::vector<std::size_t> copy(items.begin(), items.end());
  std::sort(copy.begin(), copy.end());
  for (std::size_t i = 0; i < copy.size(); ++i) {
    if (i % 2 == 0) acc += copy[i];
  }
  return acc;
}

double Reduce7(const std::unordered_set<double>& items, double limit) {
  double acc = 0.0;
  for (const auto& x : items) {
    if (x > limit) acc += x;
  }
  return acc;
}

std::size_t Reduce8(const std::deque<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  auto it = items.begin();
  while (it != items.end()) {
    acc += *it;
    ++it;
  }
  return acc;
}

double Reduce9(const std::set<double>& items, double limit) {
  double acc = 0.0;
  if (items.empty()) return acc;
  for (const auto& x : items) {
    acc = x > acc ? x : acc;
  }
  return acc;
}

std::size_t Reduce10(const std::vector<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  try {
    for (const auto& x : items) acc += x * limit;
  } catch (...) {
    acc = 0;
  }
  return acc;
}

double Reduce11(const std::list<double>& items, double limit) {
  double acc = 0.0;
  std::map<int, double> seen;
  for (const auto& x : items) {
    seen[static_cast<int>(x)] = x;
  }
  for (const auto& kv : seen) acc += kv.second;
  return acc;
}

float Reduce12(const std::unordered_set<float>& items, float limit) {
  float acc = 0.0f;
  do {
    acc += limit;
  } while (acc < limit * 4);
  for (const auto& x : items) acc -= x;
  return acc;
}

double Reduce13(const std::deque<double>& items, double limit) {
  double acc = 0.0;
  double best = 0.0;
  for (const auto& x : items) {
    if (x > best) best = x;
    else if (x == best) continue;
  }
  acc = best;
  return acc;
}

float Reduce14(const std::set<float>& items, float limit) {
  float acc = 0.0f;
  for (const auto& x : items) {
    if (x > limit) acc += x;
  }
  return acc;
}

double Reduce15(const std::vector<double>& items, double limit) {
  double acc = 0.0;
  for (const auto& x : items) {
    switch (static_cast<int>(x) % 3) {
      case 0: acc += x; break;
      default: continue;
    }
  }
  return acc;
}

float Reduce16(const std::list<float>& items, float limit) {
  float acc = 0.0f;
  if (items.empty()) return acc;
  for (const auto& x : items) {
    acc = x > acc ? x : acc;
  }
  return acc;
}

int Reduce17(const std::unordered_set<int>& items, int limit) {
  int acc = 0;
  std::string label = "n";
  for (const auto& x : items) {
    if (x < limit) { label += "+"; } else { break; }
  }
  acc += label.size();
  return acc;
}

float Reduce18(const std::deque<float>& items, float limit) {
  float acc = 0.0f;
  std::map<int, float> seen;
  for (const auto& x : items) {
    seen[static_cast<int>(x)] = x;
  }
  for (const auto& kv : seen) acc += kv.second;
  return acc;
}

int Reduce19(const std::set<int>& items, int limit) {
  int acc = 0;
  std::vector<int> copy(items.begin(), items.end());
  std::sort(copy.begin(), copy.end());
  for (std::size_t i = 0; i < copy.size(); ++i) {
    if (i % 2 == 0) acc += copy[i];
  }
  return acc;
}

float Reduce20(const std::vector<float>& items, float limit) {
  float acc = 0.0f;
  float best = 0.0f;
  for (const auto& x : items) {
    if (x > best) best = x;
    else if (x == best) continue;
  }
  acc = best;
  return acc;
}

int Reduce21(const std::list<int>& items, int limit) {
  int acc = 0;
  auto it = items.begin();
  while (it != items.end()) {
    acc += *it;
    ++it;
  }
  return acc;
}

long Reduce22(const std::unordered_set<long>& items, long limit) {
  long acc = 0L;
  for (const auto& x : items) {
    switch (static_cast<int>(x) % 3) {
      case 0: acc += x; break;
      default: continue;
    }
  }
  return acc;
}

int Reduce23(const std::deque<int>& items, int limit) {
  int acc = 0;
  try {
    for (const auto& x : items) acc += x * limit;
  } catch (...) {
    acc = 0;
  }
  return acc;
}

long Reduce24(const std::set<long>& items, long limit) {
  long acc = 0L;
  std::string label = "n";
  for (const auto& x : items) {
    if (x < limit) { label += "+"; } else { break; }
  }
  acc += label.size();
  return acc;
}

int Reduce25(const std::vector<int>& items, int limit) {
  int acc = 0;
  do {
    acc += limit;
  } while (acc < limit * 4);
  for (const auto& x : items) acc -= x;
  return acc;
}

long Reduce26(const std::list<long>& items, long limit) {
  long acc = 0L;
  std::vector<long> copy(items.begin(), items.end());
  std::sort(copy.begin(), copy.end());
  for (std::size_t i = 0; i < copy.size(); ++i) {
    if (i % 2 == 0) acc += copy[i];
  }
  return acc;
}

std::size_t Reduce27(const std::unordered_set<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  std::size_t best = 0;
  for (const auto& x : items) {
    if (x > best) best = x;
    else if (x == best) continue;
  }
  acc = best;
  return acc;
}

long Reduce28(const std::deque<long>& items, long limit) {
  long acc = 0L;
  auto it = items.begin();
  while (it != items.end()) {
    acc += *it;
    ++it;
  }
  return acc;
}

std::size_t Reduce29(const std::set<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  for (const auto& x : items) {
    switch (static_cast<int>(x) % 3) {
      case 0: acc += x; break;
      default: continue;
    }
  }
  return acc;
}

long Reduce30(const std::vector<long>& items, long limit) {
  long acc = 0L;
  try {
    for (const auto& x : items) acc += x * limit;
  } catch (...) {
    acc = 0L;
  }
  return acc;
}

std::size_t Reduce31(const std::list<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  std::string label = "n";
  for (const auto& x : items) {
    if (x < limit) { label += "+"; } else { break; }
  }
  acc += label.size();
  return acc;
}

double Reduce32(const std::unordered_set<double>& items, double limit) {
  double acc = 0.0;
  do {
    acc += limit;
  } while (acc < limit * 4);
  for (const auto& x : items) acc -= x;
  return acc;
}

std::size_t Reduce33(const std::deque<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  std::vector<std::size_t> copy(items.begin(), items.end());
  std::sort(copy.begin(), copy.end());
  for (std::size_t i = 0; i < copy.size(); ++i) {
    if (i % 2 == 0) acc += copy[i];
  }
  return acc;
}

double Reduce34(const std::set<double>& items, double limit) {
  double acc = 0.0;
  for (const auto& x : items) {
    if (x > limit) acc += x;
  }
  return acc;
}

std::size_t Reduce35(const std::vector<std::size_t>& items, std::size_t limit) {
  std::size_t acc = 0;
  auto it = items.begin();
  while (it != items.end()) {
    acc += *it;
    ++it;
  }
  return acc;
}

double Reduce36(const std::list<double>& items, double limit) {
  double acc = 0.0;
  if (items.empty()) return acc;
  for (const auto& x : items) {
    acc = x > acc ? x : acc;
  }
  return acc;
}

float Reduce37(const std::unordered_set<float>& items, float limit) {
  float acc = 0.0f;
  try {
    for (const auto& x : items) acc += x * limit;
  } catch (...) {
    acc = 0.0f;
  }
  return acc;
}

double Reduce38(const std::deque<double>& items, double limit) {
  double acc = 0.0;
  std::map<int, double> seen;
  for (const auto& x : items) {
    seen[static_cast<int>(x)] = x;
  }
  for (const auto& kv : seen) acc += kv.second;
  return acc;
}

float Reduce39(const std::set<float>& items, float limit) {
  float acc = 0.0f;
  do {
    acc += limit;
  } while (acc < limit * 4);
  for (const auto& x : items) acc -= x;
  return acc;
}

double Reduce40(const std::vector<double>& items, double limit) {
  double acc = 0.0;
  double best = 0.0;
  for (const auto& x : items) {
    if (x > best) best = x;
    else if (x == best) continue;
  }
  acc = best;
  return acc;
}

float Reduce41(const std::list<float>& items, float limit) {
  float acc = 0.0f;
  for (const auto& x : items) {
    if (x > limit) acc += x;
  }
  return acc;
}

int Reduce42(const std::unordered_set<int>& items, int limit) {
  int acc = 0;
  for (const auto& x : items) {
    switch (static_cast<int>(x) % 3) {
      case 0: acc += x; break;
      default: continue;
    }
  }
  return acc;
}

float Reduce43(const std::deque<float>& items, float limit) {
  float acc = 0.0f;
  if (items.empty()) return acc;
  for (const auto& x : items) {
    acc = x > acc ? x : acc;
  }
  return acc;
}

int Reduce44(const std::set<int>& items, int limit) {
  int acc = 0;
  std::string label = "n";
  for (const auto& x : items) {
    if (x < limit) { label += "+"; } else { break; }
  }
  acc += label.size();
  return acc;
}

float Reduce45(const std::vector<float>& items, float limit) {
  float acc = 0.0f;
  std::map<int, float> seen;
  for (const auto& x : items) {
    seen[static_cast<int>(x)] = x;
  }
  for (const auto& kv : seen) acc += kv.second;
  return acc;
}

int Reduce46(const std::list<int>& items, int limit) {
  int acc = 0;
  std::vector<int> copy(items.begin(), items.end());
  std::sort(copy.begin(), copy.end());
  for (std::size_t i = 0; i < copy.size(); ++i) {
    if (i % 2 == 0) acc += copy[i];
  }
  return acc;
}

long Reduce47(const std::unordered_set<long>& items, long limit) {
  long acc = 0L;
  long best = 0L;
  for (const auto& x : items) {
    if (x > best) best = x;
    else if (x == best) continue;
  }
  acc = best;
  return acc;
}

int Reduce48(const std::deque<int>& items, int limit) {
  int acc = 0;
  auto it = items.begin();
  while (it != items.end()) {
    acc += *it;
    ++it;
  }
  return acc;
}

long Reduce49(const std::set<long>& items, long limit) {
  long acc = 0L;
  for (const auto& x : items) {
    switch (static_cast<int>(x) % 3) {
      case 0: acc += x; break;
      default: continue;
    }
  }
  return acc;
}

}  // namespace corpus
