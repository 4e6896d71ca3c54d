import { initStudio } from "./app.js";

initStudio(document);
