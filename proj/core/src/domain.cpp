#include "csdsim/domain.hpp"

#include "csdsim/errors.hpp"

#include <algorithm>

namespace csdsim {

const char* to_string(Belt b) {
    switch (b) {
    case Belt::Gray: return "gray";
    case Belt::Green: return "green";
    case Belt::Blue: return "blue";
    case Belt::Yellow: return "yellow";
    case Belt::Red: return "red";
    }
    return "?";
}

std::optional<Belt> belt_from_string(const std::string& name) {
    std::string s;
    s.reserve(name.size());
    for (char c : name)
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "gray" || s == "grey") return Belt::Gray;
    if (s == "green") return Belt::Green;
    if (s == "blue") return Belt::Blue;
    if (s == "yellow") return Belt::Yellow;
    if (s == "red") return Belt::Red;
    return std::nullopt;
}

Belt belt_of(double rating) {
    if (rating < 0.0)
        throw DomainError("belt_of: rating must be >= 0");
    if (rating < 900.0) return Belt::Gray;
    if (rating < 1200.0) return Belt::Green;
    if (rating < 1500.0) return Belt::Blue;
    if (rating < 2200.0) return Belt::Yellow;
    return Belt::Red;
}

const char* to_string(TaskState s) {
    switch (s) {
    case TaskState::Arrived: return "arrived";
    case TaskState::Registered: return "registered";
    case TaskState::Submitted: return "submitted";
    case TaskState::Reviewed: return "reviewed";
    case TaskState::Completed: return "completed";
    case TaskState::Failed: return "failed";
    case TaskState::Starved: return "starved";
    case TaskState::Dropped: return "dropped";
    }
    return "?";
}

bool is_terminal(TaskState s) {
    return s == TaskState::Completed || s == TaskState::Failed ||
           s == TaskState::Starved || s == TaskState::Dropped;
}

const char* to_string(TaskEvent e) {
    switch (e) {
    case TaskEvent::FirstRegistration: return "first_registration";
    case TaskEvent::DeadlineNoRegistrants: return "deadline_no_registrants";
    case TaskEvent::FirstSubmission: return "first_submission";
    case TaskEvent::DeadlineNoSubmissions: return "deadline_no_submissions";
    case TaskEvent::DeadlineReview: return "deadline_review";
    case TaskEvent::ReviewPassed: return "review_passed";
    case TaskEvent::ReviewFailed: return "review_failed";
    }
    return "?";
}

int Task::registration_order(const std::string& wid) const {
    for (std::size_t i = 0; i < registrants.size(); ++i)
        if (registrants[i].worker_id == wid)
            return static_cast<int>(i) + 1;
    return 0;
}

bool Task::has_registrant(const std::string& wid) const {
    return registration_order(wid) != 0;
}

bool Task::has_submitter(const std::string& wid) const {
    return std::any_of(submitters.begin(), submitters.end(),
                       [&](const Submission& s) { return s.worker_id == wid; });
}

namespace {

[[noreturn]] void illegal(const Task& t, TaskEvent e) {
    throw StateError("illegal transition: task " + t.id + " in state '" +
                     to_string(t.state) + "' cannot take event '" + to_string(e) + "'");
}

} // namespace

Task transition(Task task, TaskEvent event) {
    switch (task.state) {
    case TaskState::Arrived:
        if (event == TaskEvent::FirstRegistration) {
            task.state = TaskState::Registered;
            return task;
        }
        if (event == TaskEvent::DeadlineNoRegistrants) {
            task.state = TaskState::Starved;
            task.failed_flag = true;
            return task;
        }
        illegal(task, event);
    case TaskState::Registered:
        if (event == TaskEvent::FirstSubmission) {
            task.state = TaskState::Submitted;
            return task;
        }
        if (event == TaskEvent::DeadlineNoSubmissions) {
            task.state = TaskState::Dropped;
            task.failed_flag = true;
            return task;
        }
        illegal(task, event);
    case TaskState::Submitted:
        if (event == TaskEvent::DeadlineReview) {
            task.state = TaskState::Reviewed;
            return task;
        }
        illegal(task, event);
    case TaskState::Reviewed:
        if (event == TaskEvent::ReviewPassed) {
            task.state = TaskState::Completed;
            task.completed_flag = true;
            return task;
        }
        if (event == TaskEvent::ReviewFailed) {
            task.state = TaskState::Failed;
            task.failed_flag = true;
            return task;
        }
        illegal(task, event);
    case TaskState::Completed:
    case TaskState::Failed:
    case TaskState::Starved:
    case TaskState::Dropped:
        illegal(task, event);
    }
    illegal(task, event);
}

bool Worker::has_skills_for(const Task& task) const {
    // Required technologies must be a subset of the worker's skills.
    return std::includes(skills.begin(), skills.end(),
                         task.technologies.begin(), task.technologies.end());
}

} // namespace csdsim
