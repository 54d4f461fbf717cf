import { createServer } from "./server.js";

const port = Number(process.env.RENDERER_PORT ?? 8100);
createServer().listen(port, () => {
  console.log(`chart renderer listening on :${port}`);
});
