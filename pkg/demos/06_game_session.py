"""Drive the HTTP game service end to end: create a session, ask for hints,
apply them, and win.

Run:  python demos/06_game_session.py
"""

import json
import threading
import urllib.request

from sixforms.service import serve

server = serve(0)
port = server.server_address[1]
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{port}"


def call(path, payload=None):
    if payload is not None:
        req = urllib.request.Request(base + path, data=json.dumps(payload).encode(),
                                     headers={"Content-Type": "application/json"})
    else:
        req = urllib.request.Request(base + path)
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


out = call("/game/new", {"forms": [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [3, 1, 4]],
                         "p": 101})
sid = out["session"]
print("session", sid, "status", out["state"]["status"])

hint = call(f"/game/{sid}/hint", {})
print("hint:", hint)

state = call(f"/game/{sid}/move", hint["move"])
print("after applying the hint:", state["status"],
      "exponent 2^-", state["exponent"]["log2_denominator"])

out = call("/game/new", {"forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, 3, 5], [7, 11, 13]],
                         "p": 101})
sid = out["session"]
state = call(f"/game/{sid}/move", {"kind": "cs", "j": "6"})
print("\nafter CS at 6:", len(state["labels"]), "labels;",
      "graph:", state["graph"])
state = call(f"/game/{sid}/undo", {})
print("after undo:", len(state["labels"]), "labels")
server.shutdown()
