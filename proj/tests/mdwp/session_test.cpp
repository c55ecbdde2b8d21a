// Session behaviour against a scripted peer on the other end of a socketpair.

#include "mdwp/codec.hpp"
#include "mdwp/session.hpp"
#include "support/vm_session.hpp"

#include <gtest/gtest.h>

#include <sys/socket.h>
#include <thread>

using namespace mdwp;

namespace
{

std::pair<Socket, Socket> socket_pair()
{
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0)
        throw std::runtime_error("socketpair failed");
    return {Socket(fds[0]), Socket(fds[1])};
}

EventSet entry_set(std::int64_t frame)
{
    MethodEntry e;
    e.frame_id = frame;
    e.cls = "A";
    e.method = "m";
    return EventSet{true, {e}};
}

} // namespace

TEST(Session, EventsArrivingBeforeAReplyAreQueuedInOrder)
{
    auto [mine, theirs] = socket_pair();
    std::thread peer([p = std::move(theirs)]() mutable {
        const auto req = p.receive_message();
        p.send_message(Message{std::nullopt, entry_set(1)});
        p.send_message(Message{std::nullopt, entry_set(2)});
        p.send_message(Message{req->id, ClassList{{"A"}}});
        p.receive_message(); // hold the socket open until the session is done
    });
    Session s(std::move(mine));
    EXPECT_EQ(s.list_classes(), std::vector<std::string>{"A"});
    auto a = s.next_event_set();
    auto b = s.next_event_set();
    ASSERT_TRUE(a && b);
    EXPECT_EQ(std::get<MethodEntry>(a->events[0]).frame_id, 1);
    EXPECT_EQ(std::get<MethodEntry>(b->events[0]).frame_id, 2);
    s.send_raw(Message{99, Disconnect{}});
    peer.join();
}

TEST(Session, RequestIdsIncreaseAndRepliesMustMatch)
{
    auto [mine, theirs] = socket_pair();
    std::thread peer([p = std::move(theirs)]() mutable {
        const auto r1 = p.receive_message();
        p.send_message(Message{r1->id, ClassList{}});
        const auto r2 = p.receive_message();
        EXPECT_GT(*r2->id, *r1->id);
        p.send_message(Message{r2->id, ClassList{}});
        const auto r3 = p.receive_message();
        p.send_message(Message{*r3->id + 1, ClassList{}});
    });
    Session s(std::move(mine));
    s.list_classes();
    s.list_classes();
    EXPECT_THROW(s.list_classes(), SessionDead);
    EXPECT_FALSE(s.alive());
    peer.join();
}

TEST(Session, ErrorRepliesAreTyped)
{
    auto [mine, theirs] = socket_pair();
    std::thread peer([p = std::move(theirs)]() mutable {
        const auto r = p.receive_message();
        p.send_message(Message{r->id, Error{ErrorCode::Purity, "push is not pure"}});
    });
    Session s(std::move(mine));
    try
    {
        s.request(InvokeMethod{1, "push", {}});
        FAIL();
    }
    catch (const RemoteError &e)
    {
        EXPECT_EQ(e.code(), ErrorCode::Purity);
        EXPECT_EQ(e.message(), "push is not pure");
    }
    EXPECT_TRUE(s.alive());
    peer.join();
}

TEST(Session, MirrorsBelongToTheirSession)
{
    auto [a, a_peer] = socket_pair();
    auto [b, b_peer] = socket_pair();
    Session s1(std::move(a)), s2(std::move(b));
    const auto foreign = s2.mirror(ObjectRef{1, "A"});
    EXPECT_THROW(s1.get_field(foreign, "x"), InvalidMirror);
}

TEST(Session, RequestAfterVmDeathIsSessionDead)
{
    auto s = testsupport::launch("bounded_stack.mob");
    s->next_event_set();
    s->resume_all();
    while (s->next_event_set())
    {
    }
    EXPECT_TRUE(s->ended());
    EXPECT_THROW(s->list_classes(), SessionDead);
    EXPECT_FALSE(s->alive());
    EXPECT_THROW(s->heap_digest(), SessionDead);
}

TEST(Session, DoubleResumeWarnsAndChangesNothing)
{
    auto s = testsupport::launch("bounded_stack.mob");
    std::vector<std::string> warnings;
    s->set_warning_sink([&](const std::string &w) { warnings.push_back(w); });
    s->next_event_set();
    s->set_event_policy({"BoundedStack"}, true, false);
    s->resume_all();
    s->resume_all();
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_NE(warnings[0].find("not suspended"), std::string::npos);
    // The event stream is intact: the first entry is the constructor.
    auto es = s->next_event_set();
    ASSERT_TRUE(es);
    EXPECT_EQ(std::get<MethodEntry>(es->events.at(0)).method, "init");
    EXPECT_TRUE(s->alive());
}

TEST(Session, FramingErrorKillsTheSession)
{
    auto [mine, theirs] = socket_pair();
    Session s(std::move(mine));
    const std::uint8_t partial[2] = {0, 0};
    theirs.write_all(partial, 2);
    theirs.close();
    EXPECT_THROW(s.next_event_set(), SessionDead);
    EXPECT_FALSE(s.alive());
}

TEST(Session, TruncatedHeaderIsAFramingError)
{
    auto [mine, theirs] = socket_pair();
    const std::uint8_t partial[2] = {0, 0};
    theirs.write_all(partial, 2);
    theirs.close();
    EXPECT_THROW(mine.receive_message(), FramingError);
}
